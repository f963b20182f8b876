#include "spectral_rec/rational.hpp"

#include <cctype>

#include "spectral_rec/error.hpp"

namespace spectral_rec {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::kMalformedInput, "zero denominator");
  Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::kMalformedInput, "not a rational literal: '" + std::string(text) + "'");
  }
  const Integer d{std::string(den)};
  if (d == 0) throw Error(ErrorKind::kMalformedInput, "zero denominator in '" + std::string(text) + "'");
  Rational r{Integer{std::string(num)}, d};
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace spectral_rec
