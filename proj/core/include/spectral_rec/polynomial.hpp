#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "spectral_rec/rational.hpp"

namespace spectral_rec {

/// Dense univariate polynomial over Q, lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}

  static Polynomial constant(const Rational& c);
  /// c * z^k.
  static Polynomial monomial(const Rational& c, int k);
  /// z - root.
  static Polynomial linear_factor(const Rational& root);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational leading() const;

  Rational operator()(const Rational& z) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// p(z + a).
  Polynomial shifted(const Rational& a) const;
  /// p(q(z)).
  Polynomial compose(const Polynomial& q) const;
  Polynomial pow(int e) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Multiplicity of `root` as a zero of this polynomial (0 if not a root).
  int root_multiplicity(const Rational& root) const;

  /// Human-readable form in the given variable, highest degree first,
  /// e.g. "z^3 - 3*z + 1/2". Parseable by the expression parser.
  std::string to_string(std::string_view var = "z") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by the zero polynomial.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Rational roots with multiplicity, sorted ascending, plus the cofactor
/// that carries no rational roots.
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  Polynomial remainder;
};
RationalRoots rational_roots(const Polynomial& p);

}  // namespace spectral_rec
