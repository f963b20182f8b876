#include "spectral_rec/laurent_series.hpp"

#include <algorithm>
#include <cstdint>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

namespace {

int clamp_precision(std::int64_t p) {
  if (p >= LaurentSeries::kExact) return LaurentSeries::kExact;
  if (p <= -LaurentSeries::kExact) return -LaurentSeries::kExact;
  return static_cast<int>(p);
}

void check_center(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.center() != b.center()) {
    throw Error(ErrorKind::kInternalConsistency, "series arithmetic across different expansion points");
  }
}

}  // namespace

LaurentSeries::LaurentSeries(int valuation, std::vector<Rational> coeffs, int precision, Rational center)
    : center_(std::move(center)), val_(valuation), c_(std::move(coeffs)), prec_(clamp_precision(precision)) {
  normalize();
}

LaurentSeries LaurentSeries::monomial(const Rational& c, int degree, Rational center) {
  return LaurentSeries(degree, {c}, kExact, std::move(center));
}

LaurentSeries LaurentSeries::zero(int precision, Rational center) {
  return LaurentSeries(precision, {}, precision, std::move(center));
}

void LaurentSeries::normalize() {
  const std::int64_t known = static_cast<std::int64_t>(prec_) - val_;
  if (known < static_cast<std::int64_t>(c_.size())) c_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, known)));
  std::size_t lead = 0;
  while (lead < c_.size() && spectral_rec::is_zero(c_[lead])) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = prec_;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
  }
  while (!c_.empty() && spectral_rec::is_zero(c_.back())) c_.pop_back();
}

Rational LaurentSeries::coefficient(int k) const {
  if (k >= prec_) {
    throw InsufficientPrecision(prec_, "coefficient of degree " + std::to_string(k) + " requested beyond known precision");
  }
  if (k < val_ || k >= support_end()) return Rational(0);
  return c_[static_cast<std::size_t>(k - val_)];
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  LaurentSeries r = *this;
  r.prec_ = std::min(prec_, precision);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r = *this;
  if (!c_.empty()) r.val_ += k;
  else r.val_ = clamp_precision(static_cast<std::int64_t>(val_) + k);
  r.prec_ = clamp_precision(static_cast<std::int64_t>(prec_) + (is_exact() ? 0 : k));
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<Rational> d;
  int v = val_;
  if (!c_.empty()) {
    d.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(val_ + static_cast<int>(i)));
    v = val_ - 1;
  }
  return LaurentSeries(v, std::move(d), is_exact() ? kExact : prec_ - 1, center_);
}

LaurentSeries LaurentSeries::inverse(int max_precision) const {
  if (c_.empty()) throw Error(ErrorKind::kInternalConsistency, "inverse of a series that vanishes to known precision");
  const std::int64_t rel = is_exact() ? kExact : static_cast<std::int64_t>(prec_) - val_;
  std::int64_t prec = std::min<std::int64_t>(max_precision, -static_cast<std::int64_t>(val_) + rel);
  if (c_.size() == 1 && is_exact()) return LaurentSeries(-val_, {1 / c_[0]}, kExact, center_);
  if (prec >= kExact) throw Error(ErrorKind::kInternalConsistency, "inverse of an exact series needs a precision cap");
  const std::int64_t count = prec + val_;
  std::vector<Rational> b(static_cast<std::size_t>(std::max<std::int64_t>(0, count)));
  if (!b.empty()) {
    const Rational inv0 = 1 / c_[0];
    b[0] = inv0;
    for (std::size_t k = 1; k < b.size(); ++k) {
      Rational acc = 0;
      const std::size_t lim = std::min(k, c_.size() - 1);
      for (std::size_t i = 1; i <= lim; ++i) acc += c_[i] * b[k - i];
      b[k] = -acc * inv0;
    }
  }
  return LaurentSeries(-val_, std::move(b), static_cast<int>(prec), center_);
}

LaurentSeries LaurentSeries::pow(int e, int max_precision) const {
  if (e < 0) return inverse(max_precision).pow(-e, max_precision);
  LaurentSeries result = monomial(1, 0, center_);
  LaurentSeries base = *this;
  while (e > 0) {
    if (e & 1) result = (result * base).truncated(max_precision);
    e >>= 1;
    if (e) base = (base * base).truncated(max_precision);
  }
  return result;
}

LaurentSeries LaurentSeries::compose(const LaurentSeries& inner, int max_precision) const {
  if (inner.is_zero() || inner.valuation() < 1) {
    throw Error(ErrorKind::kInternalConsistency, "series composition needs an inner series of positive valuation");
  }
  const int w = inner.valuation();
  // Truncation of the outer series limits the result to w * prec_.
  std::int64_t bound = is_exact() ? kExact : static_cast<std::int64_t>(w) * prec_;
  bound = std::min<std::int64_t>(bound, max_precision);
  LaurentSeries acc = zero(clamp_precision(bound), inner.center());
  if (c_.empty()) return acc;
  LaurentSeries power = inner.pow(val_, clamp_precision(bound));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!spectral_rec::is_zero(c_[i])) acc += (power * c_[i]).truncated(clamp_precision(bound));
    if (i + 1 < c_.size()) power = (power * inner).truncated(clamp_precision(bound));
  }
  return acc;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  check_center(*this, o);
  const int prec = std::min(prec_, o.prec_);
  if (o.c_.empty()) {
    prec_ = prec;
    normalize();
    return *this;
  }
  if (c_.empty()) {
    const int keep = prec;
    *this = o;
    prec_ = keep;
    normalize();
    return *this;
  }
  const int lo = std::min(val_, o.val_);
  const int hi = std::min(prec, std::max(support_end(), o.support_end()));
  std::vector<Rational> sum(static_cast<std::size_t>(std::max(0, hi - lo)));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const int d = val_ + static_cast<int>(i);
    if (d < hi) sum[static_cast<std::size_t>(d - lo)] += c_[i];
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    const int d = o.val_ + static_cast<int>(i);
    if (d < hi) sum[static_cast<std::size_t>(d - lo)] += o.c_[i];
  }
  val_ = lo;
  c_ = std::move(sum);
  prec_ = prec;
  normalize();
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries& LaurentSeries::operator*=(const Rational& c) {
  if (spectral_rec::is_zero(c)) {
    c_.clear();
    val_ = prec_;
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  check_center(a, b);
  const std::int64_t pa = a.prec_;
  const std::int64_t pb = b.prec_;
  // min(a.val + b.prec, b.val + a.prec); exact operands contribute no bound.
  std::int64_t prec = LaurentSeries::kExact;
  if (!b.is_exact()) prec = std::min<std::int64_t>(prec, static_cast<std::int64_t>(a.val_) + pb);
  if (!a.is_exact()) prec = std::min<std::int64_t>(prec, static_cast<std::int64_t>(b.val_) + pa);
  const int p = clamp_precision(prec);
  if (a.c_.empty() || b.c_.empty()) return LaurentSeries::zero(p, a.center_);
  const int lo = a.val_ + b.val_;
  const int hi = std::min<int>(p, a.support_end() + b.support_end() - 1);
  std::vector<Rational> r(static_cast<std::size_t>(std::max(0, hi - lo)));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (spectral_rec::is_zero(a.c_[i])) continue;
    const int di = a.val_ + static_cast<int>(i);
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      const int d = di + b.val_ + static_cast<int>(j);
      if (d >= hi) break;
      r[static_cast<std::size_t>(d - lo)] += a.c_[i] * b.c_[j];
    }
  }
  return LaurentSeries(lo, std::move(r), p, a.center_);
}

bool LaurentSeries::agrees_with(const LaurentSeries& o) const {
  if (center_ != o.center_) return false;
  const int hi = std::min(prec_, o.prec_);
  const int lo = std::min(val_, o.val_);
  const int top = std::min(hi, std::max(support_end(), o.support_end()));
  for (int k = lo; k < top; ++k) {
    if (coefficient(k) != o.coefficient(k)) return false;
  }
  return true;
}

std::string LaurentSeries::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (spectral_rec::is_zero(c_[i])) continue;
    if (!out.empty()) out += " + ";
    out += "(" + spectral_rec::to_string(c_[i]) + ")*t^" + std::to_string(val_ + static_cast<int>(i));
  }
  if (out.empty()) out = "0";
  if (!is_exact()) out += " + O(t^" + std::to_string(prec_) + ")";
  return out;
}

}  // namespace spectral_rec
