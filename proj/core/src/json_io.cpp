#include "spectral_rec/json_io.hpp"

#include <json.hpp>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json header(const DocumentInfo& info) {
  Json j;
  j["curve"] = info.curve;
  j["config_hash"] = info.config_hash;
  return j;
}

Json terms_json(const SpectralCurve& curve, int g, int n, const TermMap& terms) {
  Json j;
  j["g"] = g;
  j["n"] = n;
  j["terms"] = Json::array();
  for (const auto& [slots, c] : terms) {
    Json t;
    t["slots"] = Json::array();
    for (const auto& s : slots) {
      Json slot;
      slot["point"] = to_string(curve.active_points()[static_cast<std::size_t>(s.point)]);
      slot["order"] = s.order;
      t["slots"].push_back(slot);
    }
    t["coeff"] = to_string(c);
    j["terms"].push_back(t);
  }
  return j;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedInput, "correlator document: " + what);
}

}  // namespace

std::string correlator_json(const SpectralCurve& curve, const Correlator& w) {
  return terms_json(curve, w.g, w.n, w.terms).dump();
}

std::string correlators_document(const DocumentInfo& info, const CorrelatorTable& table) {
  Json j = header(info);
  j["correlators"] = Json::array();
  for (const auto& [key, w] : table.entries()) j["correlators"].push_back(terms_json(table.curve(), w.g, w.n, w.terms));
  return dump(j);
}

std::string free_energies_document(const DocumentInfo& info, const FreeEnergyTable& table) {
  Json j = header(info);
  j["free_energies"] = Json::array();
  for (const auto& [key, f] : table.entries()) {
    j["free_energies"].push_back(terms_json(table.curve(), f.g, f.n, f.terms));
  }
  return dump(j);
}

std::string wkb_document(const DocumentInfo& info, const WKBExpansion& expansion) {
  const SpectralCurve& curve = *expansion.curve;
  Json j = header(info);
  j["order"] = expansion.order;
  j["dS0"] = "(" + expansion.dS0.fn.num().to_string() + ")/(" + expansion.dS0.fn.den().to_string() + ") dz";
  j["dS1"] = "(" + expansion.dS1.fn.num().to_string() + ")/(" + expansion.dS1.fn.den().to_string() + ") dz";
  j["terms"] = Json::array();
  for (const auto& [m, s] : expansion.S) {
    Json t;
    t["m"] = m;
    t["poles"] = Json::array();
    for (const Point& p : curve.active_points()) {
      const int ord = -function_order(p, s);
      if (ord <= 0) continue;
      Json pole;
      pole["point"] = to_string(p);
      pole["order"] = ord;
      t["poles"].push_back(pole);
    }
    t["rational"] = "(" + s.num().to_string() + ")/(" + s.den().to_string() + ")";
    t["source"] = std::string(to_string(expansion.source.at(m)));
    j["terms"].push_back(t);
  }
  return dump(j);
}

std::string report_document(const DocumentInfo& info, std::string_view suite, const VerificationReport& report) {
  Json j = header(info);
  j["suite"] = std::string(suite);
  j["passed"] = report.ok();
  j["checks"] = Json::array();
  for (const auto& c : report.checks) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (!c.passed) e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  return dump(j);
}

std::string document_hash(std::string_view text) {
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("config_hash") || !j["config_hash"].is_string()) return {};
  return j["config_hash"].get<std::string>();
}

CorrelatorTable read_correlators(std::string_view text, std::shared_ptr<const SpectralCurve> curve) {
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) malformed("not valid JSON");
  if (!j.is_object() || !j.contains("correlators") || !j["correlators"].is_array()) malformed("missing correlators");
  CorrelatorTable table(curve);
  for (const Json& e : j["correlators"]) {
    if (!e.is_object() || !e.contains("g") || !e.contains("n") || !e.contains("terms") ||
        !e["g"].is_number_integer() || !e["n"].is_number_integer() || !e["terms"].is_array()) {
      malformed("bad correlator entry");
    }
    Correlator w{e["g"].get<int>(), e["n"].get<int>(), {}};
    for (const Json& t : e["terms"]) {
      if (!t.is_object() || !t.contains("slots") || !t.contains("coeff") || !t["slots"].is_array() ||
          !t["coeff"].is_string()) {
        malformed("bad term");
      }
      Slots slots;
      for (const Json& s : t["slots"]) {
        if (!s.is_object() || !s.contains("point") || !s.contains("order") || !s["point"].is_string() ||
            !s["order"].is_number_integer()) {
          malformed("bad slot");
        }
        const int idx = curve->active_index(parse_point(s["point"].get<std::string>()));
        if (idx < 0) malformed("point " + s["point"].get<std::string>() + " is not an active ramification point");
        slots.push_back(PoleSlot{idx, s["order"].get<int>()});
      }
      if (static_cast<int>(slots.size()) != w.n) malformed("slot count differs from n");
      w.terms[slots] = parse_rational(t["coeff"].get<std::string>());
    }
    table.insert(std::move(w));
  }
  return table;
}

}  // namespace spectral_rec
