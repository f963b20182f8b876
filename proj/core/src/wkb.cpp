#include "spectral_rec/wkb.hpp"

#include <algorithm>
#include <optional>

#include "spectral_rec/algebra.hpp"
#include "spectral_rec/error.hpp"

namespace spectral_rec {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

/// One nonzero kernel vector of m, or empty when the kernel is trivial.
std::vector<Rational> kernel_vector(Matrix m, std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && spectral_rec::is_zero(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || spectral_rec::is_zero(m[r][col])) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  }
  if (free_col == cols) return {};
  std::vector<Rational> v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<std::size_t>(pivot_col[r])] = -m[r][free_col];
  return v;
}

LaurentSeries recentered(const LaurentSeries& s, const Rational& center) {
  std::vector<Rational> c;
  for (int k = s.valuation(); k < s.support_end(); ++k) c.push_back(s.coefficient(k));
  return LaurentSeries(s.valuation(), std::move(c), s.precision(), center);
}

std::string sub(int m) { return "S_" + std::to_string(m); }

RationalFunction half_inverse_h(const SpectralCurve& curve) {
  return RationalFunction(Rational(1, 2)) / curve.h();
}

}  // namespace

std::string_view to_string(WKBSource source) {
  return source == WKBSource::kFreeEnergies ? "free-energies" : "recursion";
}

RationalFunction s2_of_curve(const SpectralCurve& curve) {
  const RationalFunction& x = curve.x();
  if (x.map_degree() != 2) throw Error(ErrorKind::kMode, "s2 needs a base projection of degree 2");
  const RationalFunction y2 = curve.y() * curve.y();
  const int d = y2.map_degree();
  if (d % 2 != 0) throw Error(ErrorKind::kNotASpectralCurve, "y^2 is not a function of x");
  const int D = d / 2;
  // e * P(a/b) b^D - c * Q(a/b) b^D = 0 with x = a/b and y^2 = c/e.
  const Polynomial& a = x.num();
  const Polynomial& b = x.den();
  std::vector<Polynomial> basis;
  for (int i = 0; i <= D; ++i) basis.push_back(a.pow(i) * b.pow(D - i));
  std::vector<Polynomial> columns;
  for (const auto& p : basis) columns.push_back(p * y2.den());
  for (const auto& p : basis) columns.push_back(-(p * y2.num()));
  int rows = 0;
  for (const auto& p : columns) rows = std::max(rows, p.degree() + 1);
  Matrix m(static_cast<std::size_t>(rows), std::vector<Rational>(columns.size(), Rational(0)));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (int r = 0; r <= columns[c].degree(); ++r) m[static_cast<std::size_t>(r)][c] = columns[c].coeff(r);
  }
  const std::vector<Rational> v = kernel_vector(std::move(m), columns.size());
  if (v.empty()) throw Error(ErrorKind::kNotASpectralCurve, "y^2 is not a function of x");
  const auto half = static_cast<std::ptrdiff_t>(D + 1);
  const Polynomial P(std::vector<Rational>(v.begin(), v.begin() + half));
  const Polynomial Q(std::vector<Rational>(v.begin() + half, v.end()));
  if (Q.is_zero()) throw Error(ErrorKind::kNotASpectralCurve, "y^2 is not a function of x");
  const RationalFunction s2 = -RationalFunction(P, Q);
  if (s2.compose(x) != -y2) throw Error(ErrorKind::kNotASpectralCurve, "y^2 is not a function of x");
  return s2;
}

std::pair<OneForm, OneForm> build_s0_s1(const SpectralCurve& curve, int samples, std::uint64_t seed) {
  const RationalFunction& y = curve.y();
  const RationalFunction dy = y.derivative();
  const OneForm ds0 = curve.eta();
  const OneForm ds1{RationalFunction(Rational(-1, 2)) * dy / y};
  const RationalFunction dx = curve.x().derivative();
  for (const auto& z : generic_samples(curve, 1, samples, seed)) {
    const Rational& z0 = z[0];
    // S0' = y, S1' = dS1/dx, S0'' = y'/x'.
    const Rational s0p = y(z0);
    const Rational s1p = ds1.fn(z0) / dx(z0);
    const Rational s0pp = dy(z0) / dx(z0);
    if (s0pp + 2 * s0p * s1p != 0) {
      throw Error(ErrorKind::kConsistency, "S0'' + 2 S0' S1' does not vanish at z = " + to_string(z0));
    }
  }
  return {ds0, ds1};
}

RationalFunction sm_from_free_energies(const FreeEnergyTable& table, int m) {
  if (m < 2) throw Error(ErrorKind::kUnsupportedOperation, "S_m from free energies needs m >= 2");
  const int level = m - 1;
  RationalFunction out;
  Rational factorial = 1;
  for (int n = 1; n <= level + 2; ++n) {
    factorial *= n;
    if ((level + 2 - n) % 2 != 0) continue;
    const int g = (level + 2 - n) / 2;
    out += diagonal_specialize(table.curve(), table.at(g, n), 0) * RationalFunction(1 / factorial);
  }
  return out;
}

RationalFunction sm_recursion_step(const WKBExpansion& expansion, int m) {
  if (m < 2) throw Error(ErrorKind::kUnsupportedOperation, "the WKB recursion starts at m = 2");
  for (int a = 2; a <= m; ++a) {
    if (!expansion.S.count(a)) throw Error(ErrorKind::kIncompleteTable, sub(a) + " is missing");
  }
  const RationalFunction k = half_inverse_h(*expansion.curve);
  const RationalFunction dm = expansion.S.at(m).derivative();
  RationalFunction inner = dm.derivative();
  for (int a = 2; a <= m - 1; ++a) {
    const int b = m + 1 - a;
    if (b < 2) continue;
    inner += expansion.S.at(a).derivative() * expansion.S.at(b).derivative();
  }
  const RationalFunction next_derivative = -(k * inner) - k.derivative() * dm;
  try {
    return antiderivative(next_derivative);
  } catch (const Error& e) {
    throw Error(e.kind(), "integrating " + sub(m + 1) + "': " + e.what());
  }
}

WKBExpansion build_wkb(const FreeEnergyTable& table, int order) {
  const SpectralCurve& curve = table.curve();
  if (!curve.involution()) throw Error(ErrorKind::kMode, "the WKB expansion needs a global involution");
  if (order < 2) throw Error(ErrorKind::kMalformedInput, "wkb order must be at least 2");
  WKBExpansion w;
  w.curve = table.curve_ptr();
  auto [ds0, ds1] = build_s0_s1(curve);
  w.dS0 = ds0;
  w.dS1 = ds1;
  w.order = order;
  for (int m = 2; m <= order; ++m) {
    bool covered = true;
    for (int n = 1; n <= m + 1; ++n) {
      if ((m + 1 - n) % 2 == 0 && !table.contains((m + 1 - n) / 2, n)) covered = false;
    }
    try {
      if (covered) {
        w.S[m] = sm_from_free_energies(table, m);
        w.source[m] = WKBSource::kFreeEnergies;
      } else {
        w.S[m] = sm_recursion_step(w, m - 1);
        w.source[m] = WKBSource::kRecursion;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), sub(m) + ": " + e.what());
    }
  }
  return w;
}

RationalFunction x_derivative(const WKBExpansion& expansion, int m) {
  const SpectralCurve& curve = *expansion.curve;
  const RationalFunction dx = curve.x().derivative();
  if (m == 0) return curve.y();
  if (m == 1) return expansion.dS1.fn / dx;
  const auto it = expansion.S.find(m);
  if (it == expansion.S.end()) throw Error(ErrorKind::kIncompleteTable, sub(m) + " is missing");
  return it->second.derivative() / dx;
}

QuantumCurveReport schrodinger_residuals(const WKBExpansion& expansion, int order) {
  const SpectralCurve& curve = *expansion.curve;
  QuantumCurveReport report;
  report.s2 = s2_of_curve(curve);
  const RationalFunction dx = curve.x().derivative();
  std::vector<RationalFunction> p;
  for (int m = 0; m <= order; ++m) p.push_back(x_derivative(expansion, m));
  bool clean = true;
  for (int k = 0; k <= order; ++k) {
    RationalFunction r;
    if (k == 0) r += report.s2.compose(curve.x());
    if (k >= 1) r += p[static_cast<std::size_t>(k - 1)].derivative() / dx;
    for (int a = 0; a <= k; ++a) r += p[static_cast<std::size_t>(a)] * p[static_cast<std::size_t>(k - a)];
    if (clean && r.is_zero()) report.verified_through = k;
    if (!r.is_zero()) clean = false;
    report.residuals[k] = r;
  }
  return report;
}

QuantumCurveReport verify_schrodinger(const WKBExpansion& expansion, int order) {
  QuantumCurveReport report = schrodinger_residuals(expansion, order);
  for (const auto& [k, r] : report.residuals) {
    if (!r.is_zero()) {
      throw Error(ErrorKind::kQuantizationFailure,
                  "hbar^" + std::to_string(k) + " coefficient does not vanish: " + r.to_string());
    }
  }
  return report;
}

std::map<int, LaurentSeries> ode_series_oracle(const RationalFunction& s2, const Rational& x0, const Rational& y0,
                                               int depth, int order) {
  if (s2.has_pole_at(x0) || spectral_rec::is_zero(s2(x0))) {
    throw Error(ErrorKind::kBadSample, "x0 = " + to_string(x0) + " is not a regular point of s2");
  }
  if (y0 * y0 != -s2(x0)) {
    throw Error(ErrorKind::kBadSheet, "y0^2 != -s2(x0) at x0 = " + to_string(x0));
  }
  const int prec = depth + order + 2;
  const LaurentSeries minus_s2 = recentered(-series_expand(s2, x0, prec), 0);
  std::map<int, LaurentSeries> s;
  s[0] = series_sqrt(minus_s2, y0, prec);
  const LaurentSeries inv_two_s0 = (s[0] * Rational(2)).inverse(prec);
  s[1] = -(s[0].derivative() * inv_two_s0);
  for (int m = 1; m < order; ++m) {
    LaurentSeries inner = s[m].derivative();
    for (int a = 1; a <= m; ++a) {
      const int b = m + 1 - a;
      if (b < 1 || b > m) continue;
      inner += s[a] * s[b];
    }
    s[m + 1] = -(inner * inv_two_s0);
  }
  for (auto& [m, series] : s) {
    if (series.precision() < depth) {
      throw Error(ErrorKind::kInternalConsistency, "oracle lost precision at m = " + std::to_string(m));
    }
    series = recentered(series.truncated(depth), x0);
  }
  return s;
}

std::map<int, LaurentSeries> x_chart_expansion(const WKBExpansion& expansion, const Rational& x0,
                                               const Rational& y0, int depth) {
  const SpectralCurve& curve = *expansion.curve;
  const RationalFunction& x = curve.x();
  std::optional<Rational> z0;
  for (const auto& [root, mult] : rational_roots((x - RationalFunction(x0)).num()).roots) {
    if (!curve.y().has_pole_at(root) && curve.y()(root) == y0) z0 = root;
  }
  if (!z0) throw Error(ErrorKind::kBadSheet, "no rational point over x0 = " + to_string(x0) + " with y = y0");
  const RationalFunction dx = x.derivative();
  if (dx.has_pole_at(*z0) || spectral_rec::is_zero(dx(*z0))) {
    throw Error(ErrorKind::kBadSample, "x is not a local coordinate at z = " + to_string(*z0));
  }
  const int prec = depth + 2;
  const LaurentSeries u = recentered(series_expand(x, *z0, prec) - LaurentSeries::monomial(x0, 0, *z0), 0);
  const LaurentSeries t = series_reversion(u, prec);
  std::map<int, LaurentSeries> out;
  for (int m = 0; m <= expansion.order; ++m) {
    const LaurentSeries f = recentered(series_expand(x_derivative(expansion, m), *z0, prec), 0);
    out[m] = recentered(f.compose(t, prec).truncated(depth), x0);
  }
  return out;
}

std::pair<Rational, Rational> default_base_point(const SpectralCurve& curve) {
  for (int k = 1; k < 64; ++k) {
    for (int sign : {1, -1}) {
      const Rational z0 = k * sign;
      try {
        check_sample(curve, {z0});
        return {curve.x()(z0), curve.y()(z0)};
      } catch (const Error&) {
      }
    }
  }
  throw Error(ErrorKind::kBadSample, "no regular base point with small integer coordinate");
}

VerificationReport verify_wkb(const FreeEnergyTable& table, const WKBExpansion& expansion, int oracle_depth,
                              std::uint64_t seed) {
  VerificationReport report;
  const SpectralCurve& curve = *expansion.curve;
  const int order = expansion.order;

  try {
    build_s0_s1(curve, 8, seed);
    report.add("S1 consistency", true, "");
  } catch (const Error& e) {
    report.add("S1 consistency", false, e.what());
  }

  for (int m = 2; m < order; ++m) {
    if (expansion.source.at(m + 1) != WKBSource::kFreeEnergies) continue;
    // The recursion fixes S_{m+1} up to an additive constant.
    const bool equal = sm_recursion_step(expansion, m).derivative() == expansion.S.at(m + 1).derivative();
    report.add("two-path " + sub(m + 1) + "'", equal,
               equal ? "" : "recursion from " + sub(m) + " disagrees with the free-energy " + sub(m + 1) + "'");
  }

  const Mobius sigma = *curve.involution();
  for (const auto& [m, s] : expansion.S) {
    std::string detail;
    for (const Point& p : curve.active_points()) {
      const int ord = -function_order(p, s);
      if (ord != 3 * m - 3) {
        detail = sub(m) + " has pole order " + std::to_string(ord) + " at z = " + to_string(p) + ", expected " +
                 std::to_string(3 * m - 3);
      }
    }
    report.add("pole order " + sub(m), detail.empty(), detail);
    const RationalFunction sign((m - 1) % 2 == 0 ? Rational(1) : Rational(-1));
    const bool parity = s.compose(sigma.as_function()) == sign * s;
    report.add("sigma parity " + sub(m), parity, parity ? "" : sub(m) + "(sigma z) != (-1)^(m-1) " + sub(m) + "(z)");
  }

  try {
    const QuantumCurveReport q = schrodinger_residuals(expansion, order);
    for (const auto& [k, r] : q.residuals) {
      report.add("schroedinger hbar^" + std::to_string(k), r.is_zero(),
                 r.is_zero() ? "" : "residual " + r.to_string());
    }
    const auto [x0, y0] = default_base_point(curve);
    const auto oracle = ode_series_oracle(q.s2, x0, y0, oracle_depth, order);
    const auto engine = x_chart_expansion(expansion, x0, y0, oracle_depth);
    for (int m = 0; m <= order; ++m) {
      const bool equal = oracle.at(m) == engine.at(m);
      report.add("oracle " + sub(m) + "'", equal,
                 equal ? "" : "x-chart expansion at x0 = " + to_string(x0) + " differs from the ODE series");
    }
  } catch (const Error& e) {
    report.add("quantum curve", false, e.what());
  }
  (void)table;
  return report;
}

}  // namespace spectral_rec
