// One line per acceptance criterion: PASS/FAIL, wall time against its limit, detail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_rec/commands.hpp"
#include "spectral_rec/config.hpp"
#include "spectral_rec/error.hpp"
#include "spectral_rec/wkb.hpp"

namespace {

using namespace spectral_rec;
namespace fs = std::filesystem;

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
  void merge(const VerificationReport& r, const std::string& context) {
    for (const auto& c : r.checks) expect(c.passed, context + ": " + c.name + " " + c.detail);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

RationalFunction z() { return RationalFunction::variable(); }
RationalFunction k(long n, long d = 1) { return RationalFunction(make_rational(n, d)); }

std::shared_ptr<const SpectralCurve> airy(Mode mode = Mode::kExact, int order = 16) {
  return std::make_shared<const SpectralCurve>(build_curve(z() * z(), z(), mode, order));
}
std::shared_ptr<const SpectralCurve> curve_b() {
  return std::make_shared<const SpectralCurve>(build_curve(k(1) / (k(1) - z() * z()), z() / (k(1) - z() * z()),
                                                           Mode::kExact));
}
std::shared_ptr<const SpectralCurve> h_model() {
  return std::make_shared<const SpectralCurve>(build_curve(z() * z(), z() * k(1, 2), Mode::kExact));
}

TermMap single(std::vector<int> orders, const Rational& c) {
  Slots s;
  for (int o : orders) s.push_back(PoleSlot{0, o});
  return TermMap{{s, c}};
}

Outcome w11_dual_path() {
  Outcome out;
  for (const auto& [name, curve] : {std::pair{"airy", airy()}, std::pair{"curve B", curve_b()},
                                    std::pair{"h-model", h_model()}}) {
    CorrelatorTable table(curve);
    const Correlator residue = compute_wgn(table, 1, 1);
    out.expect(residue == w11_closed_form(*curve), std::string(name) + ": residues differ from the closed form");
  }
  CorrelatorTable table(airy());
  out.expect(compute_w11(table).terms == single({4}, make_rational(-1, 16)), "airy W(1,1) != -1/16 dz/z^4");
  return out;
}

Outcome w03_closed_form_check() {
  Outcome out;
  for (const auto& curve : {airy(), curve_b(), h_model()}) {
    CorrelatorTable table(curve);
    const Correlator w = compute_wgn(table, 0, 3);
    for (const auto& s : generic_samples(*curve, 3, 20, 3)) {
      out.expect(evaluate(*curve, w, s) == w03_closed_form(*curve, s[0], s[1], s[2]), "W(0,3) != closed form");
    }
    for (const auto& [slots, c] : w.terms) {
      for (const auto& slot : slots) out.expect(slot.point >= 0 && slot.order >= 2, "W(0,3) has a stray pole");
    }
  }
  CorrelatorTable table(h_model());
  out.expect(compute_w03(table).terms == single({2, 2, 2}, -1), "h-model W(0,3) != -dz1 dz2 dz3/(z1 z2 z3)^2");
  return out;
}

Outcome structural_suite() {
  Outcome out;
  for (const auto& curve : {airy(), curve_b()}) {
    const CorrelatorTable table = compute_table(curve, 4, default_thread_count());
    out.expect(table.complete_level() >= 4, "table incomplete");
    out.merge(verify_correlators(table), "structure");
  }
  return out;
}

Outcome free_energy_round_trip() {
  Outcome out;
  for (const auto& curve : {airy(), curve_b()}) {
    const CorrelatorTable w = compute_table(curve, 4, default_thread_count());
    const FreeEnergyTable f = integrate_table(w);
    for (const auto& [key, fe] : f.entries()) {
      out.expect(differentiate(fe) == w.at(key.first, key.second), "d F != W");
      out.merge(verify_normalization(*curve, fe), "normalization");
    }
  }
  const FreeEnergyTable f = integrate_table(compute_table(airy(), 1));
  const RationalFunction z3 = z() * z() * z();
  out.expect(diagonal_specialize(f.curve(), f.at(1, 1), 0) == k(1, 48) / z3, "F(1,1) != 1/(48 z^3)");
  out.expect(f.at(0, 3).terms == TermMap{{{PoleSlot{0, 1}, PoleSlot{0, 1}, PoleSlot{0, 1}}, make_rational(1, 2)}},
             "F(0,3) != 1/(2 z1 z2 z3)");
  return out;
}

Outcome differential_recursion_cross_path() {
  Outcome out;
  for (const auto& curve : {airy(), curve_b()}) {
    const CorrelatorTable w = compute_table(curve, 4, default_thread_count());
    const FreeEnergyTable f = integrate_table(w);
    int tuples = 0;
    for (const auto& [key, fe] : f.entries()) {
      const auto samples = generic_samples(*curve, fe.n, 20, 17 + static_cast<std::uint64_t>(fe.n));
      out.expect(samples.size() >= 20, "fewer than 20 samples");
      for (const auto& s : samples) {
        if (fe.g == 0 && fe.n == 3) {
          out.expect(evaluate(*curve, differentiate(fe), s) == w03_closed_form(*curve, s[0], s[1], s[2]),
                     "F(0,3) cross path");
        } else {
          out.expect(dF_differential_recursion(f, fe.g, fe.n, s) == dF_direct(f, fe.g, fe.n, s),
                     "cross path (" + std::to_string(fe.g) + "," + std::to_string(fe.n) + ")");
        }
        ++tuples;
      }
    }
    out.expect(tuples >= 20 * static_cast<int>(f.entries().size()), "sample count");
  }
  return out;
}

Outcome wkb_values() {
  Outcome out;
  const FreeEnergyTable f = integrate_table(compute_table(airy(), 4, default_thread_count()));
  const RationalFunction z3 = z() * z() * z();
  const RationalFunction s2 = sm_from_free_energies(f, 2);
  const RationalFunction s3 = sm_from_free_energies(f, 3);
  out.expect(s2 == k(5, 48) / z3, "S_2 != 5/(48 z^3)");
  out.expect(s3 == k(5, 64) / (z3 * z3), "S_3 != 5/(64 z^6)");
  WKBExpansion w = build_wkb(f, 5);
  out.expect(sm_recursion_step(w, 2) == s3, "recursion S_3 differs from free-energy S_3");
  for (int m = 3; m <= 4; ++m) {
    out.expect(sm_recursion_step(w, m) == w.S.at(m + 1), "recursion and free energies differ at m + 1 = " +
                                                             std::to_string(m + 1));
  }
  for (int m = 2; m <= 5; ++m) {
    out.expect(-function_order(Point::finite(0), w.S.at(m)) == 3 * m - 3, "pole order of S_" + std::to_string(m));
  }
  return out;
}

Outcome schrodinger() {
  Outcome out;
  for (const auto& curve : {airy(), curve_b()}) {
    const WKBExpansion w = build_wkb(integrate_table(compute_table(curve, 4, default_thread_count())), 6);
    const QuantumCurveReport r = schrodinger_residuals(w, 6);
    out.expect(r.verified_through == 6, "residual at hbar^" + std::to_string(r.verified_through + 1));
    const RationalFunction p0 = x_derivative(w, 0), p1 = x_derivative(w, 1);
    const RationalFunction dx = curve->x().derivative();
    out.expect(r.residuals.at(0) == p0 * p0 + r.s2.compose(curve->x()), "hbar^0 is not the classical limit");
    out.expect(r.residuals.at(1) == p0.derivative() / dx + k(2) * p0 * p1, "hbar^1 is not the consistency relation");
  }
  return out;
}

Outcome ode_oracle() {
  Outcome out;
  struct Case {
    std::shared_ptr<const SpectralCurve> curve;
    Rational x0, y0;
  };
  for (const Case& c : {Case{airy(), 1, 1}, Case{curve_b(), make_rational(-1, 3), make_rational(-2, 3)}}) {
    const WKBExpansion w = build_wkb(integrate_table(compute_table(c.curve, 3)), 4);
    const auto oracle = ode_series_oracle(s2_of_curve(*c.curve), c.x0, c.y0, 12, 4);
    const auto engine = x_chart_expansion(w, c.x0, c.y0, 12);
    for (int m = 2; m <= 4; ++m) {
      for (int j = 0; j < 12; ++j) {
        out.expect(oracle.at(m).coefficient(j) == engine.at(m).coefficient(j),
                   "S_" + std::to_string(m) + "' coefficient " + std::to_string(j) + " at x0 = " + to_string(c.x0));
      }
    }
  }
  return out;
}

Outcome series_consistency() {
  Outcome out;
  const CorrelatorTable exact = compute_table(airy(), 3);
  const CorrelatorTable series = compute_table(airy(Mode::kSeries, 16), 3);
  const CorrelatorTable doubled = compute_table(airy(Mode::kSeries, 32), 3);
  for (const auto& [key, w] : exact.entries()) {
    const std::string gn = "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
    out.expect(series.contains(key.first, key.second) && series.at(key.first, key.second).terms == w.terms,
               "series differs from exact at " + gn);
    out.expect(doubled.contains(key.first, key.second) && doubled.at(key.first, key.second).terms == w.terms,
               "doubled truncation differs at " + gn);
  }
  out.merge(verify_correlators(series), "series structure");
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome out;
  const CurveConfig cfg = parse_config(R"toml([curve]
name = "curve_b"
x = "1/(1 - z^2)"
y = "z/(1 - z^2)"
mode = "exact"
[compute]
g_max = 2
n_max = 2
wkb_order = 5
seed = 3
)toml");
  const fs::path base = fs::temp_directory_path() / "spectral_rec_acceptance";
  fs::remove_all(base);
  std::vector<std::string> docs;
  for (int threads : {1, 1, 2, 8}) {
    const fs::path dir = base / std::to_string(docs.size());
    run_compute(cfg, dir, {false, threads});
    docs.push_back(slurp(dir / "w.json") + slurp(dir / "f.json") + slurp(dir / "wkb.json"));
  }
  for (const auto& d : docs) out.expect(d == docs.front() && !d.empty(), "JSON differs between runs");
  fs::remove_all(base);
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "W(1,1) residues equal the closed form on three curves", 1, w11_dual_path},
      {2, "W(0,3) residues equal the closed form; h-model display", 1, w03_closed_form_check},
      {3, "symmetry, pole support and balanced average through level 4", 60, structural_suite},
      {4, "free-energy round trip, fiber normalization, Airy values", 10, free_energy_round_trip},
      {5, "differential recursion equals the integrated free energies", 120, differential_recursion_cross_path},
      {6, "Airy S_2, S_3 along both paths; pole orders 3m - 3", 60, wkb_values},
      {7, "Schroedinger residuals vanish through hbar^6", 120, schrodinger},
      {8, "ODE oracle matches the x-chart expansion to depth 12", 60, ode_oracle},
      {9, "SERIES mode reproduces EXACT mode and is truncation-stable", 120, series_consistency},
      {10, "byte-identical JSON across runs and thread caps", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "over the time limit";
    }
    if (!o.ok) ++failures;
    std::printf("[%s] %2d %-62s %8.3fs / %4.0fs%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.limit_seconds, o.ok ? "" : "  ", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
