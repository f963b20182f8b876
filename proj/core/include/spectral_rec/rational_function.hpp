#pragma once

#include <string>

#include "spectral_rec/polynomial.hpp"

namespace spectral_rec {

/// num/den in canonical form: gcd(num, den) = 1, den monic, zero is 0/1.
/// Canonical form makes operator== structural.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);
  RationalFunction(const Rational& c) : RationalFunction(Polynomial::constant(c)) {}  // NOLINT

  /// The identity function z.
  static RationalFunction variable();

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Exact value; throws Error(kPoleEvaluation) at a pole.
  Rational operator()(const Rational& z) const;
  bool has_pole_at(const Rational& z) const { return is_zero_value(den_(z)); }

  RationalFunction derivative() const;
  /// this(inner(z)).
  RationalFunction compose(const RationalFunction& inner) const;
  RationalFunction pow(int e) const;
  RationalFunction reciprocal() const;

  /// Order of the pole at z = p (0 if regular there).
  int pole_order(const Rational& p) const;
  /// Order of the pole at infinity, deg(num) - deg(den) when positive, else 0.
  int pole_order_at_infinity() const;
  /// deg(num) - deg(den), the order of growth at infinity (negative means a zero there).
  int degree_at_infinity() const { return num_.degree() - den_.degree(); }
  /// Degree as a map P^1 -> P^1.
  int map_degree() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Expression text such as "(z^2 + 1)/z", accepted by the parser.
  std::string to_string(std::string_view var = "z") const;

 private:
  static bool is_zero_value(const Rational& r) { return sgn(r) == 0; }
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

/// Canonical form of num/den. Throws Error(kMalformedInput) when den is zero.
RationalFunction normalize(const Polynomial& num, const Polynomial& den);

}  // namespace spectral_rec
