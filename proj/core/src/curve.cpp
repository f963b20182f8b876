#include "spectral_rec/curve.hpp"

#include <algorithm>
#include <random>

#include "spectral_rec/algebra.hpp"
#include "spectral_rec/error.hpp"

namespace spectral_rec {

namespace {

RationalFunction z_var() { return RationalFunction::variable(); }

int valuation_at_zero(const RationalFunction& f) {
  if (f.is_zero()) return LaurentSeries::kExact;
  return f.num().root_multiplicity(0) - f.den().root_multiplicity(0);
}

/// Ramification index of x at p.
int ramification_index(const Point& p, const RationalFunction& x) {
  const RationalFunction X = pullback_function(p, x);
  const int v = valuation_at_zero(X);
  if (v < 0) return -v;
  return valuation_at_zero(X - RationalFunction(X(0)));
}

/// Chart expression of x with the point sent to a finite value.
RationalFunction regular_chart_x(const Point& p, const RationalFunction& x) {
  const RationalFunction X = pullback_function(p, x);
  return valuation_at_zero(X) < 0 ? X.reciprocal() : X;
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::kExact ? "exact" : "series"; }

std::string to_string(const Point& p) { return p.infinite ? "inf" : spectral_rec::to_string(p.value); }

Point parse_point(std::string_view text) {
  if (text == "inf") return Point::infinity();
  return Point::finite(parse_rational(text));
}

RationalFunction chart_map(const Point& p) {
  if (p.infinite) return z_var().reciprocal();
  return z_var() + RationalFunction(p.value);
}

RationalFunction pullback_function(const Point& p, const RationalFunction& f) { return f.compose(chart_map(p)); }

RationalFunction pullback_form(const Point& p, const RationalFunction& f) {
  const RationalFunction zt = chart_map(p);
  return f.compose(zt) * zt.derivative();
}

int function_order(const Point& p, const RationalFunction& f) { return valuation_at_zero(pullback_function(p, f)); }

int form_order(const Point& p, const RationalFunction& f) { return valuation_at_zero(pullback_form(p, f)); }

RationalFunction basis_form(const Point& p, int k) {
  if (p.infinite) return -z_var().pow(k - 2);
  return (z_var() - RationalFunction(p.value)).pow(-k);
}

RationalFunction basis_function(const Point& p, int k) {
  if (p.infinite) return z_var().pow(k);
  return (z_var() - RationalFunction(p.value)).pow(-k);
}

Rational basis_form_value(const Point& p, int k, const Rational& z) {
  if (p.infinite) {
    Rational r = 1;
    if (k >= 2) {
      for (int i = 0; i < k - 2; ++i) r *= z;
    } else {
      for (int i = 0; i < 2 - k; ++i) r /= z;
    }
    return -r;
  }
  Rational d = z - p.value, r = 1;
  for (int i = 0; i < k; ++i) r *= d;
  return 1 / r;
}

Rational basis_function_value(const Point& p, int k, const Rational& z) {
  Rational base = p.infinite ? z : Rational(1 / (z - p.value));
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

Rational basis_function_derivative(const Point& p, int k, const Rational& z) {
  if (k == 0) return 0;
  // d/dz (1/t^k) = -k t'(z) / t^{k+1}, with t = z - p or 1/z.
  if (p.infinite) return k * basis_function_value(p, k - 1, z);
  return -k * basis_function_value(p, k + 1, z);
}

RationalFunction chart_involution(const Point& p, const Mobius& sigma) {
  const RationalFunction image = sigma.as_function().compose(chart_map(p));
  if (p.infinite) return image.reciprocal();
  return image - RationalFunction(p.value);
}

Point Mobius::operator()(const Point& p) const {
  if (p.infinite) return is_zero(c) ? Point::infinity() : Point::finite(a / c);
  const Rational den = c * p.value + d;
  if (is_zero(den)) return Point::infinity();
  return Point::finite((a * p.value + b) / den);
}

RationalFunction Mobius::as_function() const {
  return RationalFunction(Polynomial{b, a}, Polynomial{d, c});
}

Rational Mobius::apply(const Rational& z) const {
  const Rational den = c * z + d;
  if (is_zero(den)) throw Error(ErrorKind::kPoleEvaluation, "involution maps " + spectral_rec::to_string(z) + " to infinity");
  return (a * z + b) / den;
}

bool Mobius::is_identity() const { return is_zero(b) && is_zero(c) && a == d; }

int SpectralCurve::active_index(const Point& p) const {
  const auto it = std::find(active_.begin(), active_.end(), p);
  return it == active_.end() ? -1 : static_cast<int>(it - active_.begin());
}

LaurentSeries SpectralCurve::local_sigma(int i, int precision) const {
  const auto idx = static_cast<std::size_t>(i);
  if (mode_ == Mode::kExact) return series_expand(local_sigma_exact_[idx], 0, precision);
  const LaurentSeries& s = local_sigma_series_[idx];
  return s.truncated(std::min(precision, s.precision()));
}

std::optional<Mobius> degree_two_involution(const RationalFunction& x) {
  if (x.map_degree() != 2) return std::nullopt;
  const Polynomial& P = x.num();
  const Polynomial& Q = x.den();
  auto c = [&](int i, int j) -> Rational { return P.coeff(i) * Q.coeff(j) - P.coeff(j) * Q.coeff(i); };
  // P(z)Q(w) - P(w)Q(z) = (w - z)(c01 + c02 (z + w) + c12 z w).
  const Rational c01 = c(0, 1), c02 = c(0, 2), c12 = c(1, 2);
  Mobius m{-c02, -c01, c12, c02};
  if (is_zero(m.a * m.d - m.b * m.c)) return std::nullopt;
  return m;
}

SpectralCurve build_curve(const RationalFunction& x, const RationalFunction& y, Mode mode, int series_order) {
  if (x.num().degree() <= 0 && x.den().degree() <= 0) {
    throw Error(ErrorKind::kDegenerateCurve, "x is constant");
  }
  if (y.is_zero()) throw Error(ErrorKind::kDegenerateCurve, "y is identically zero");

  SpectralCurve curve;
  curve.x_ = x;
  curve.y_ = y;
  curve.h_ = y * x.derivative();
  curve.mode_ = mode;
  curve.series_order_ = series_order;

  const Polynomial crit = x.num().derivative() * x.den() - x.num() * x.den().derivative();
  const RationalRoots rr = rational_roots(crit);
  if (rr.remainder.degree() > 0) {
    throw Error(ErrorKind::kUnsupportedCurve,
                "x = " + x.to_string() + " has irrational ramification points (factor " + rr.remainder.to_string() + ")");
  }
  std::vector<Point> candidates;
  for (const auto& [r, m] : rr.roots) candidates.push_back(Point::finite(r));
  candidates.push_back(Point::infinity());

  for (const Point& p : candidates) {
    const int e = ramification_index(p, x);
    if (e < 2) continue;
    const int ord = form_order(p, curve.h_);
    if (e > 2) {
      if (!p.infinite || ord > 0) {
        throw Error(ErrorKind::kUnsupportedRamification,
                    "ramification of index " + std::to_string(e) + " at z = " + to_string(p));
      }
      continue;
    }
    curve.ram_.push_back(RamPoint{p, ord == 2, ord});
    if (ord == 2) curve.active_.push_back(p);
  }

  if (mode == Mode::kExact) {
    curve.sigma_ = degree_two_involution(x);
    if (!curve.sigma_) {
      throw Error(ErrorKind::kMode, "exact mode needs x of degree 2; x = " + x.to_string() + " has degree " +
                                        std::to_string(x.map_degree()));
    }
    const Mobius& s = *curve.sigma_;
    const RationalFunction sf = s.as_function();
    if (s.is_identity() || !(x.compose(sf) == x)) {
      throw Error(ErrorKind::kInternalConsistency, "involution does not preserve x");
    }
    if (!(curve.h_.compose(sf) * sf.derivative() == -curve.h_)) {
      throw Error(ErrorKind::kNotASpectralCurve, "eta is not anti-invariant under the deck transformation");
    }
    for (const Point& p : curve.active_) curve.local_sigma_exact_.push_back(chart_involution(p, s));
  } else {
    curve.sigma_ = degree_two_involution(x);
    for (const Point& p : curve.active_) {
      curve.local_sigma_series_.push_back(local_involution(regular_chart_x(p, x), series_order));
    }
  }
  for (const Point& p : curve.active_) curve.local_h_.push_back(pullback_form(p, curve.h_));
  return curve;
}

void check_sample(const SpectralCurve& curve, const std::vector<Rational>& z) {
  const RationalFunction xp = curve.x().derivative();
  auto bad = [](const RationalFunction& f, const Rational& v) {
    return is_zero(f.den()(v)) || is_zero(f.num()(v));
  };
  const auto& sigma = curve.involution();
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Rational& v = z[i];
    const std::string where = "coordinate " + std::to_string(i + 1) + " = " + to_string(v);
    for (const RamPoint& r : curve.ram_points()) {
      if (!r.location.infinite && r.location.value == v) throw Error(ErrorKind::kBadSample, where + " is a ramification point");
    }
    if (bad(curve.x(), v) || bad(xp, v) || bad(curve.y(), v) || bad(curve.h(), v)) {
      throw Error(ErrorKind::kBadSample, where + " is a zero or pole of the curve data");
    }
    if (sigma && is_zero(sigma->c * v + sigma->d)) throw Error(ErrorKind::kBadSample, where + " is conjugate to infinity");
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j != i && z[j] == v) throw Error(ErrorKind::kBadSample, where + " coincides with another coordinate");
      if (sigma && sigma->apply(z[j]) == v) {
        throw Error(ErrorKind::kBadSample, where + " is conjugate to coordinate " + std::to_string(j + 1));
      }
    }
  }
}

std::vector<std::vector<Rational>> generic_samples(const SpectralCurve& curve, int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Rational> z;
    for (int i = 0; i < n; ++i) {
      // Raw engine output keeps the sequence identical across standard libraries.
      const auto num = static_cast<std::int64_t>(rng() % 201) - 100;
      const auto den = static_cast<std::int64_t>(rng() % 29) + 1;
      z.push_back(make_rational(num, den));
    }
    try {
      check_sample(curve, z);
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(z));
  }
  return out;
}

OneForm cauchy_kernel(const Rational& a, const Rational& b) {
  if (a == b) return OneForm{};
  return OneForm{(z_var() - RationalFunction(a)).reciprocal() - (z_var() - RationalFunction(b)).reciprocal()};
}

Rational bergman(const Rational& z1, const Rational& z2) {
  if (z1 == z2) throw Error(ErrorKind::kPoleEvaluation, "Bergman kernel evaluated on the diagonal");
  const Rational d = z1 - z2;
  return 1 / (d * d);
}

RationalFunction bergman_on_involution(const Mobius& sigma) {
  const RationalFunction s = sigma.as_function();
  return s.derivative() / (z_var() - s).pow(2);
}

Rational kernel_value(const SpectralCurve& curve, const Rational& z, const Rational& z1) {
  if (!curve.involution()) throw Error(ErrorKind::kMode, "kernel_value needs a global involution");
  const Mobius& s = *curve.involution();
  const Rational sz = s.apply(z);
  const Rational ds = (s.a * s.d - s.b * s.c) / ((s.c * z + s.d) * (s.c * z + s.d));
  const Rational den = curve.h()(sz) * ds - curve.h()(z);
  if (is_zero(den)) throw Error(ErrorKind::kPoleEvaluation, "kernel denominator vanishes");
  if (z1 == z || z1 == sz) throw Error(ErrorKind::kPoleEvaluation, "kernel evaluated on its polar locus");
  return (1 / (z1 - sz) - 1 / (z1 - z)) / den;
}

std::vector<LaurentSeries> kernel_coefficients(const SpectralCurve& curve, int i, int kmax, int precision) {
  const LaurentSeries s = curve.local_sigma(i, precision);
  const LaurentSeries H = series_expand(curve.local_h(i), 0, precision);
  LaurentSeries D;
  if (curve.mode() == Mode::kExact) {
    D = H * Rational(-2);
  } else {
    D = H.compose(s, precision) * s.derivative() - H;
  }
  if (D.is_zero() || D.valuation() != 2) {
    throw Error(ErrorKind::kDegenerateCurve, "recursion kernel denominator does not vanish to order 2 at z = " +
                                                 to_string(curve.active_points()[static_cast<std::size_t>(i)]));
  }
  const LaurentSeries Dinv = D.inverse(precision);
  std::vector<LaurentSeries> out;
  out.reserve(static_cast<std::size_t>(kmax));
  const LaurentSeries t = LaurentSeries::monomial(1, 1);
  LaurentSeries sk = LaurentSeries::monomial(1, 0);
  LaurentSeries tk = LaurentSeries::monomial(1, 0);
  for (int k = 1; k <= kmax; ++k) {
    sk = (sk * s).truncated(precision + k);
    tk = tk.shifted(1);
    out.push_back((sk - tk) * Dinv);
  }
  return out;
}

}  // namespace spectral_rec
