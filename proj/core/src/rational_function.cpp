#include "spectral_rec/rational_function.hpp"

#include <algorithm>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

RationalFunction normalize(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }

void RationalFunction::canonicalize() {
  if (den_.is_zero()) throw Error(ErrorKind::kMalformedInput, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    const Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::variable() { return RationalFunction(Polynomial{Rational(0), Rational(1)}); }

Rational RationalFunction::operator()(const Rational& z) const {
  const Rational d = den_(z);
  if (is_zero_value(d)) {
    throw Error(ErrorKind::kPoleEvaluation, "evaluation of " + to_string() + " at its pole z = " + spectral_rec::to_string(z));
  }
  return num_(z) / d;
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::compose(const RationalFunction& inner) const {
  // Horner over rational functions keeps intermediate degrees small.
  auto horner = [&inner](const Polynomial& p) {
    RationalFunction acc;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      acc *= inner;
      acc += RationalFunction(*it);
    }
    return acc;
  };
  return horner(num_) / horner(den_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return reciprocal().pow(-e);
  RationalFunction out(num_.pow(e), den_.pow(e));
  return out;
}

RationalFunction RationalFunction::reciprocal() const {
  if (num_.is_zero()) throw Error(ErrorKind::kPoleEvaluation, "reciprocal of the zero function");
  return RationalFunction(den_, num_);
}

int RationalFunction::pole_order(const Rational& p) const { return den_.root_multiplicity(p); }

int RationalFunction::pole_order_at_infinity() const { return std::max(0, num_.degree() - den_.degree()); }

int RationalFunction::map_degree() const { return std::max(num_.degree(), den_.degree()); }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.num_.is_zero()) throw Error(ErrorKind::kMalformedInput, "division by the zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

namespace {

bool needs_parens(const Polynomial& p) {
  int terms = 0;
  for (const auto& c : p.coeffs()) terms += spectral_rec::is_zero(c) ? 0 : 1;
  if (terms > 1) return true;
  // A single term still needs grouping when it carries a coefficient or sign.
  return p.leading() != 1 && p.degree() > 0;
}

}  // namespace

std::string RationalFunction::to_string(std::string_view var) const {
  const std::string n = num_.to_string(var);
  if (den_.degree() == 0) return n;
  const bool nparen = needs_parens(num_) || (num_.degree() == 0 && num_.leading().get_den() != 1) ||
                      sgn(num_.leading()) < 0;
  std::string out = nparen ? "(" + n + ")" : n;
  out += "/";
  out += needs_parens(den_) ? "(" + den_.to_string(var) + ")" : den_.to_string(var);
  return out;
}

}  // namespace spectral_rec
