#pragma once

#include <map>
#include <utility>
#include <vector>

#include "spectral_rec/laurent_series.hpp"
#include "spectral_rec/rational_function.hpp"

namespace spectral_rec {

/// Laurent expansion of f at z = p in t = z - p, with every coefficient of
/// degree < order. The result carries center p.
LaurentSeries series_expand(const RationalFunction& f, const Rational& p, int order);

/// Coefficient of 1/(z - p) in the expansion of f(z) dz at p.
Rational residue_at(const RationalFunction& f, const Rational& p);

struct PartialFractions {
  Polynomial polynomial_part;
  /// (pole, order k) -> coefficient of 1/(z - pole)^k.
  std::map<std::pair<Rational, int>, Rational> terms;

  RationalFunction reconstruct() const;
};

/// Decomposes f over the given pole set. Throws Error(kUnexpectedPole) when
/// the denominator has a root outside `poles`.
PartialFractions partial_fractions(const RationalFunction& f, const std::vector<Rational>& poles);

/// Decomposition over all poles of f, which must be rational.
PartialFractions partial_fractions(const RationalFunction& f);

/// F with F' = f and no constant term in the pole basis. Throws
/// Error(kLogarithmicTerm) if f has a nonzero residue anywhere.
RationalFunction antiderivative(const RationalFunction& f);

/// Exact value of f at z0; throws Error(kPoleEvaluation) at a pole.
Rational evaluate(const RationalFunction& f, const Rational& z0);

/// The local deck transformation at a simple critical point p of x: the
/// unique series sigma(z) = p - (z - p) + ... with x(sigma(z)) = x(z),
/// known modulo (z - p)^order. Newton iteration on the divided difference
/// (x(s) - x(z)) / (s - z), seeded with p - (z - p).
LaurentSeries newton_local_inverse(const RationalFunction& x, const Rational& p, int order);

/// Same as above in the local variable: X is given as a rational function
/// of t with X'(0) = 0, and the result is s(t) with s(0) = 0, center 0.
LaurentSeries local_involution(const RationalFunction& X, int order);

/// Compositional inverse of a power series u = a_1 t + a_2 t^2 + ... with
/// a_1 != 0, i.e. t as a series in u.
LaurentSeries series_reversion(const LaurentSeries& s, int order);

/// Square root of a power series with a given nonzero constant term root
/// (root^2 must equal the constant term).
LaurentSeries series_sqrt(const LaurentSeries& s, const Rational& root, int order);

}  // namespace spectral_rec
