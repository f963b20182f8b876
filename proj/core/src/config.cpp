#include "spectral_rec/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "spectral_rec/error.hpp"
#include "spectral_rec/expression.hpp"

namespace spectral_rec {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::kMalformedInput, what); }

std::string require_string(const toml::table& t, std::string_view section, std::string_view key) {
  const auto v = t[section][key].value<std::string>();
  if (!v) malformed("missing string [" + std::string(section) + "]." + std::string(key));
  return *v;
}

std::int64_t require_int(const toml::table& t, std::string_view section, std::string_view key) {
  const auto v = t[section][key].value<std::int64_t>();
  if (!v) malformed("missing integer [" + std::string(section) + "]." + std::string(key));
  return *v;
}

}  // namespace

CurveConfig parse_config(std::string_view toml_text) {
  toml::table t;
  try {
    t = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    malformed(std::string("config: ") + std::string(e.description()));
  }
  CurveConfig c;
  c.name = require_string(t, "curve", "name");
  c.x_expr = require_string(t, "curve", "x");
  c.y_expr = require_string(t, "curve", "y");
  const std::string mode = t["curve"]["mode"].value_or(std::string("exact"));
  if (mode == "exact") {
    c.mode = Mode::kExact;
  } else if (mode == "series") {
    c.mode = Mode::kSeries;
  } else {
    malformed("mode must be \"exact\" or \"series\", got \"" + mode + "\"");
  }
  const std::int64_t g_max = require_int(t, "compute", "g_max");
  const std::int64_t n_max = require_int(t, "compute", "n_max");
  const std::int64_t wkb = require_int(t, "compute", "wkb_order");
  if (g_max < 0 || g_max > 64) malformed("g_max must lie in [0, 64]");
  if (n_max < 1 || n_max > 64) malformed("n_max must lie in [1, 64]");
  if (wkb < 2 || wkb > 256) malformed("wkb_order must lie in [2, 256]");
  c.g_max = static_cast<int>(g_max);
  c.n_max = static_cast<int>(n_max);
  c.wkb_order = static_cast<int>(wkb);
  if (const auto so = t["compute"]["series_order"].value<std::int64_t>()) {
    if (*so < 2 || *so > 4096) malformed("series_order must lie in [2, 4096]");
    c.series_order = static_cast<int>(*so);
  } else if (t["compute"]["series_order"]) {
    malformed("series_order must be an integer");
  }
  const std::int64_t seed = t["compute"]["seed"].value_or(std::int64_t{1});
  if (seed < 0) malformed("seed must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  parse_expression(c.x_expr);
  parse_expression(c.y_expr);
  return c;
}

CurveConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SpectralCurve build_curve(const CurveConfig& config, bool h_model) {
  const RationalFunction x = parse_expression(config.x_expr);
  RationalFunction y = parse_expression(config.y_expr);
  if (h_model) y *= RationalFunction(Rational(1, 2));
  return build_curve(x, y, config.mode, config.series_order.value_or(16));
}

std::string config_hash(const CurveConfig& config, bool h_model) {
  std::ostringstream canon;
  canon << "name=" << config.name << '\n'
        << "x=" << parse_expression(config.x_expr).to_string() << '\n'
        << "y=" << parse_expression(config.y_expr).to_string() << '\n'
        << "mode=" << to_string(config.mode) << '\n'
        << "g_max=" << config.g_max << '\n'
        << "n_max=" << config.n_max << '\n'
        << "series_order=" << config.series_order.value_or(-1) << '\n'
        << "seed=" << config.seed << '\n'
        << "h_model=" << h_model << '\n';
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : canon.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace spectral_rec
