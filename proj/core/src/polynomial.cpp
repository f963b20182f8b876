#include "spectral_rec/polynomial.hpp"

#include <algorithm>
#include <set>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && spectral_rec::is_zero(c_.back())) c_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_factor(const Rational& root) {
  return Polynomial(std::vector<Rational>{-root, Rational(1)});
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational Polynomial::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational Polynomial::operator()(const Rational& z) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  Polynomial r = *this;
  const Rational lead = leading();
  for (auto& c : r.c_) c /= lead;
  return r;
}

Polynomial Polynomial::shifted(const Rational& a) const {
  // Horner in the shifted variable.
  Polynomial acc;
  const Polynomial lin(std::vector<Rational>{a, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= lin;
    acc += constant(*it);
  }
  return acc;
}

Polynomial Polynomial::compose(const Polynomial& q) const {
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q;
    acc += constant(*it);
  }
  return acc;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (spectral_rec::is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (spectral_rec::is_zero(c)) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

int Polynomial::root_multiplicity(const Rational& root) const {
  if (is_zero()) return 0;
  int m = 0;
  Polynomial p = *this;
  const Polynomial lin = linear_factor(root);
  while (!p.is_zero() && spectral_rec::is_zero(p(root))) {
    p = divmod(p, lin).first;
    ++m;
  }
  return m;
}

std::string Polynomial::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[static_cast<std::size_t>(k)];
    if (spectral_rec::is_zero(c)) continue;
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    if (k >= 1) {
      mono = std::string(var);
      if (k > 1) mono += "^" + std::to_string(k);
    }
    if (k == 0) {
      out += spectral_rec::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += spectral_rec::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::kMalformedInput, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational lead = b.leading();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + b.degree())] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (spectral_rec::is_zero(q)) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

RationalRoots rational_roots(const Polynomial& p) {
  RationalRoots out;
  if (p.degree() <= 0) {
    out.remainder = p;
    return out;
  }
  Polynomial rest = p;
  const int zero_mult = rest.root_multiplicity(Rational(0));
  if (zero_mult > 0) {
    out.roots.emplace_back(Rational(0), zero_mult);
    rest = divmod(rest, Polynomial::monomial(1, zero_mult)).first;
  }
  if (rest.degree() >= 1) {
    // Clear denominators to get an integer polynomial; candidates are
    // +-(divisor of a0)/(divisor of an).
    Integer lcm = 1;
    for (const auto& c : rest.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    const Integer a0 = Rational(rest.coeff(0) * lcm).get_num();
    const Integer an = Rational(rest.leading() * lcm).get_num();
    std::set<Rational> candidates;
    for (const auto& num : positive_divisors(a0)) {
      for (const auto& den : positive_divisors(an)) {
        Rational r(num, den);
        r.canonicalize();
        candidates.insert(r);
        candidates.insert(-r);
      }
    }
    for (const auto& r : candidates) {
      const int m = rest.root_multiplicity(r);
      if (m == 0) continue;
      out.roots.emplace_back(r, m);
      rest = divmod(rest, Polynomial::linear_factor(r).pow(m)).first;
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.remainder = rest;
  return out;
}

}  // namespace spectral_rec
