#pragma once

#include <string>
#include <vector>

#include "spectral_rec/rational.hpp"

namespace spectral_rec {

/// Truncated Laurent series sum_k a_k t^k in the local variable t = z - center.
///
/// Coefficients are known for every degree below `precision()`; stored
/// coefficients start at `valuation()` and any degree between the last stored
/// coefficient and `precision()` is zero. A series whose precision equals
/// `kExact` is an exact (finitely supported) Laurent polynomial. Arithmetic
/// propagates precision, so a coefficient is never reported unless it is
/// fully determined by the inputs.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;

  /// The exact zero series.
  LaurentSeries() = default;
  LaurentSeries(int valuation, std::vector<Rational> coeffs, int precision, Rational center = 0);

  static LaurentSeries monomial(const Rational& c, int degree, Rational center = 0);
  /// Zero known through degree precision - 1.
  static LaurentSeries zero(int precision, Rational center = 0);

  const Rational& center() const { return center_; }
  /// Lowest degree with a nonzero coefficient; equals precision() for a zero series.
  int valuation() const { return val_; }
  int precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return c_.empty(); }
  /// Highest stored degree + 1 (== valuation() when zero).
  int support_end() const { return val_ + static_cast<int>(c_.size()); }

  /// Throws InsufficientPrecision when k >= precision().
  Rational coefficient(int k) const;
  Rational residue() const { return coefficient(-1); }

  LaurentSeries truncated(int precision) const;
  /// Multiplies by t^k.
  LaurentSeries shifted(int k) const;
  LaurentSeries derivative() const;
  /// Multiplicative inverse; `max_precision` caps the result for inputs whose
  /// exact inverse has infinite support.
  LaurentSeries inverse(int max_precision = kExact) const;
  LaurentSeries pow(int e, int max_precision = kExact) const;
  /// this(inner(t)); inner must have positive valuation.
  LaurentSeries compose(const LaurentSeries& inner, int max_precision = kExact) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(const Rational& c);

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(LaurentSeries a, const Rational& c) { return a *= c; }
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.center_ == b.center_ && a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
  }

  /// Agreement on every degree known to both.
  bool agrees_with(const LaurentSeries& o) const;

  std::string to_string() const;

 private:
  void normalize();

  Rational center_ = 0;
  int val_ = kExact;
  std::vector<Rational> c_;
  int prec_ = kExact;
};

}  // namespace spectral_rec
