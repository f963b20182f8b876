#include "spectral_rec/algebra.hpp"

#include <algorithm>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

LaurentSeries series_expand(const RationalFunction& f, const Rational& p, int order) {
  if (f.is_zero()) return LaurentSeries::zero(order, p);
  Polynomial num = f.num().shifted(p);
  Polynomial den = f.den().shifted(p);
  const int a = num.root_multiplicity(0);
  const int m = den.root_multiplicity(0);
  num = divmod(num, Polynomial::monomial(1, a)).first;
  den = divmod(den, Polynomial::monomial(1, m)).first;
  const int val = a - m;
  // A polynomial quotient is exact once the expansion has run past its degree.
  const bool exact = den.degree() == 0;
  const int count = exact ? num.degree() + 1 : std::max(0, order - val);
  // Power-series division num/den with den(0) != 0.
  std::vector<Rational> q(static_cast<std::size_t>(count));
  const Rational d0 = den.coeff(0);
  for (int k = 0; k < count; ++k) {
    Rational acc = num.coeff(k);
    const int lim = std::min(k, den.degree());
    for (int i = 1; i <= lim; ++i) acc -= den.coeff(i) * q[static_cast<std::size_t>(k - i)];
    q[static_cast<std::size_t>(k)] = acc / d0;
  }
  return LaurentSeries(val, std::move(q), exact ? LaurentSeries::kExact : order, p)
      .truncated(exact ? LaurentSeries::kExact : order);
}

Rational residue_at(const RationalFunction& f, const Rational& p) {
  if (!f.has_pole_at(p)) return Rational(0);
  return series_expand(f, p, 0).residue();
}

RationalFunction PartialFractions::reconstruct() const {
  RationalFunction out(polynomial_part);
  for (const auto& [key, c] : terms) {
    const auto& [p, k] = key;
    out += RationalFunction(Polynomial::constant(c), Polynomial::linear_factor(p).pow(k));
  }
  return out;
}

PartialFractions partial_fractions(const RationalFunction& f, const std::vector<Rational>& poles) {
  PartialFractions out;
  int covered = 0;
  std::vector<std::pair<Rational, int>> mult;
  for (const auto& p : poles) {
    if (std::any_of(mult.begin(), mult.end(), [&](const auto& e) { return e.first == p; })) continue;
    const int m = f.den().root_multiplicity(p);
    if (m > 0) mult.emplace_back(p, m);
    covered += m;
  }
  if (covered != f.den().degree()) {
    throw Error(ErrorKind::kUnexpectedPole, "denominator of " + f.to_string() + " has roots outside the allowed pole set");
  }
  out.polynomial_part = divmod(f.num(), f.den()).first;
  for (const auto& [p, m] : mult) {
    const LaurentSeries s = series_expand(f, p, 0);
    for (int k = 1; k <= m; ++k) {
      const Rational c = s.coefficient(-k);
      if (!spectral_rec::is_zero(c)) out.terms[{p, k}] = c;
    }
  }
  return out;
}

PartialFractions partial_fractions(const RationalFunction& f) {
  const RationalRoots rr = rational_roots(f.den());
  if (rr.remainder.degree() > 0) {
    throw Error(ErrorKind::kUnexpectedPole, "denominator of " + f.to_string() + " has irrational roots");
  }
  std::vector<Rational> poles;
  for (const auto& [p, m] : rr.roots) poles.push_back(p);
  return partial_fractions(f, poles);
}

RationalFunction antiderivative(const RationalFunction& f) {
  if (f.is_zero()) return {};
  const PartialFractions pf = partial_fractions(f);
  RationalFunction out;
  for (const auto& [key, c] : pf.terms) {
    const auto& [p, k] = key;
    if (k == 1) {
      throw Error(ErrorKind::kLogarithmicTerm,
                  "nonzero residue " + to_string(c) + " at z = " + to_string(p) + " in " + f.to_string());
    }
    out += RationalFunction(Polynomial::constant(c / (1 - k)), Polynomial::linear_factor(p).pow(k - 1));
  }
  std::vector<Rational> integral(pf.polynomial_part.coeffs().size() + 1);
  for (std::size_t k = 0; k < pf.polynomial_part.coeffs().size(); ++k) {
    integral[k + 1] = pf.polynomial_part.coeffs()[k] / static_cast<long>(k + 1);
  }
  out += RationalFunction(Polynomial(std::move(integral)));
  return out;
}

Rational evaluate(const RationalFunction& f, const Rational& z0) { return f(z0); }

LaurentSeries local_involution(const RationalFunction& X, int order) {
  if (order < 2) order = 2;
  const int n = order;
  const LaurentSeries xs = series_expand(X, 0, n + 2);
  if (xs.valuation() < 0) {
    throw Error(ErrorKind::kUnsupportedRamification, "base projection has a pole at the expansion point");
  }
  if (!spectral_rec::is_zero(xs.coefficient(1))) {
    throw Error(ErrorKind::kUnsupportedRamification, "expansion point is not a critical point of x");
  }
  if (spectral_rec::is_zero(xs.coefficient(2))) {
    throw Error(ErrorKind::kUnsupportedRamification, "critical point is not simple (x'' = 0)");
  }
  const LaurentSeries t = LaurentSeries::monomial(1, 1);
  LaurentSeries s = LaurentSeries::monomial(-1, 1).truncated(n);

  // Q(s,t) = sum_k c_k h_k(s,t) with h_k = (s^k - t^k)/(s - t).
  auto divided_difference = [&](const LaurentSeries& sv) {
    LaurentSeries h = LaurentSeries::monomial(1, 0);   // h_1
    LaurentSeries dh = LaurentSeries::zero(LaurentSeries::kExact);
    LaurentSeries tk = t;                               // t^1
    LaurentSeries q = LaurentSeries::zero(n);
    LaurentSeries qs = LaurentSeries::zero(n);
    for (int k = 1; k <= n + 1; ++k) {
      if (k >= 2) {
        const Rational c = xs.coefficient(k);
        if (!spectral_rec::is_zero(c)) {
          q += (h * c).truncated(n);
          qs += (dh * c).truncated(n);
        }
      }
      // h_{k+1} = s h_k + t^k, d/ds h_{k+1} = h_k + s d/ds h_k.
      LaurentSeries next_dh = (h + sv * dh).truncated(n);
      h = (sv * h + tk).truncated(n);
      dh = std::move(next_dh);
      tk = tk.shifted(1);
    }
    return std::make_pair(q, qs);
  };

  // Each step roughly doubles the number of correct coefficients.
  int steps = 4;
  for (int p = 1; p < n; p *= 2) ++steps;
  for (int it = 0; it < steps; ++it) {
    auto [q, qs] = divided_difference(s);
    LaurentSeries next = (s - q * qs.inverse(n)).truncated(n);
    if (next == s) break;
    s = std::move(next);
  }
  const LaurentSeries lhs = xs.compose(s, n + 1);
  if (!(lhs - xs).truncated(n).is_zero()) {
    throw Error(ErrorKind::kInternalConsistency, "Newton iteration for the local involution did not converge");
  }
  return s;
}

LaurentSeries newton_local_inverse(const RationalFunction& x, const Rational& p, int order) {
  const RationalFunction shifted = x.compose(RationalFunction(Polynomial{p, Rational(1)}));
  const LaurentSeries s = local_involution(shifted, order);
  std::vector<Rational> c;
  for (int k = 0; k < order; ++k) c.push_back(k == 0 ? p : s.coefficient(k));
  return LaurentSeries(0, std::move(c), order, p);
}

LaurentSeries series_reversion(const LaurentSeries& s, int order) {
  if (s.valuation() != 1) throw Error(ErrorKind::kInternalConsistency, "series reversion needs valuation 1");
  // Newton on s(v) - u = 0 for v(u).
  const LaurentSeries u = LaurentSeries::monomial(1, 1);
  const LaurentSeries ds = s.derivative();
  LaurentSeries v = (u * Rational(1 / s.coefficient(1))).truncated(order);
  int steps = 4;
  for (int p = 1; p < order; p *= 2) ++steps;
  for (int it = 0; it < steps; ++it) {
    const LaurentSeries f = (s.compose(v, order) - u).truncated(order);
    const LaurentSeries fp = ds.compose(v, order);
    LaurentSeries next = (v - f * fp.inverse(order)).truncated(order);
    if (next == v) break;
    v = std::move(next);
  }
  return v;
}

LaurentSeries series_sqrt(const LaurentSeries& s, const Rational& root, int order) {
  if (root * root != s.coefficient(0) || spectral_rec::is_zero(root) || s.valuation() < 0) {
    throw Error(ErrorKind::kBadSheet, "square-root seed does not match the constant term");
  }
  LaurentSeries y = LaurentSeries::monomial(root, 0).truncated(order);
  int steps = 4;
  for (int p = 1; p < order; p *= 2) ++steps;
  const Rational half(1, 2);
  for (int it = 0; it < steps; ++it) {
    LaurentSeries next = ((y + s.truncated(order) * y.inverse(order)) * half).truncated(order);
    if (next == y) break;
    y = std::move(next);
  }
  return y;
}

}  // namespace spectral_rec
