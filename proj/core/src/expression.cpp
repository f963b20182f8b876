#include "spectral_rec/expression.hpp"

#include <cctype>

namespace spectral_rec {

namespace {

constexpr long kMaxExponent = 1L << 20;

class Parser {
 public:
  Parser(std::string_view text, char variable) : text_(text), var_(variable) {}

  Expr parse() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    Expr e = sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw SyntaxError(pos_, text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character");
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr{Expr::Kind::kAdd, 0, {std::move(lhs), product()}};
      } else if (accept('-')) {
        lhs = Expr{Expr::Kind::kSub, 0, {std::move(lhs), product()}};
      } else {
        return lhs;
      }
    }
  }

  Expr product() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr{Expr::Kind::kMul, 0, {std::move(lhs), unary()}};
      } else if (accept('/')) {
        lhs = Expr{Expr::Kind::kDiv, 0, {std::move(lhs), unary()}};
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr{Expr::Kind::kNeg, 0, {unary()}};
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    return Expr{Expr::Kind::kPow, exponent(), {std::move(base)}};
  }

  Rational exponent() {
    skip_space();
    const std::size_t at = pos_;
    bool negative = accept('-');
    skip_space();
    bool paren = false;
    if (accept('(')) {
      paren = true;
      if (accept('-')) negative = !negative;
    }
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw SyntaxError(pos_, "exponent must be an integer");
    }
    Rational k = integer();
    if (paren && !accept(')')) throw SyntaxError(pos_, "expected ')'");
    if (negative) k = -k;
    skip_space();
    if (accept('^')) {
      const Rational e = exponent();
      if (e < 0) throw SyntaxError(at, "exponent must be an integer");
      Rational p = 1;
      for (Rational i = 0; i < e && abs(p) <= kMaxExponent; ++i) p *= k;
      k = p;
    }
    if (abs(k) > kMaxExponent) throw SyntaxError(at, "exponent too large");
    return k;
  }

  Rational integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Rational(Integer(std::string(text_.substr(start, pos_ - start))));
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!accept(')')) {
        skip_space();
        throw SyntaxError(pos_, pos_ >= text_.size() ? "unbalanced '('" : "expected ')'");
      }
      return e;
    }
    if (c == var_) {
      ++pos_;
      return Expr{Expr::Kind::kVariable, 0, {}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr{Expr::Kind::kLiteral, integer(), {}};
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  char var_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
      return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv:
      return 2;
    case Expr::Kind::kNeg:
      return 3;
    case Expr::Kind::kPow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap(const Expr& e, int min_prec, char var) {
  const std::string s = print(e, var);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

Expr parse_expression_ast(std::string_view text, char variable) { return Parser(text, variable).parse(); }

RationalFunction to_rational_function(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kLiteral:
      return RationalFunction(e.value);
    case Expr::Kind::kVariable:
      return RationalFunction::variable();
    case Expr::Kind::kNeg:
      return -to_rational_function(e.args[0]);
    case Expr::Kind::kAdd:
      return to_rational_function(e.args[0]) + to_rational_function(e.args[1]);
    case Expr::Kind::kSub:
      return to_rational_function(e.args[0]) - to_rational_function(e.args[1]);
    case Expr::Kind::kMul:
      return to_rational_function(e.args[0]) * to_rational_function(e.args[1]);
    case Expr::Kind::kDiv: {
      const RationalFunction d = to_rational_function(e.args[1]);
      if (d.is_zero()) throw Error(ErrorKind::kMalformedInput, "division by the zero polynomial");
      return to_rational_function(e.args[0]) / d;
    }
    case Expr::Kind::kPow: {
      const RationalFunction b = to_rational_function(e.args[0]);
      if (e.value < 0 && b.is_zero()) throw Error(ErrorKind::kMalformedInput, "division by the zero polynomial");
      return b.pow(static_cast<int>(e.value.get_num().get_si()));
    }
  }
  throw Error(ErrorKind::kInternalConsistency, "unknown expression node");
}

RationalFunction parse_expression(std::string_view text, char variable) {
  return to_rational_function(parse_expression_ast(text, variable));
}

std::string print(const Expr& e, char variable) {
  switch (e.kind) {
    case Expr::Kind::kLiteral:
      return e.value.get_num().get_str();
    case Expr::Kind::kVariable:
      return std::string(1, variable);
    case Expr::Kind::kNeg:
      return "-" + wrap(e.args[0], 3, variable);
    case Expr::Kind::kAdd:
      return wrap(e.args[0], 1, variable) + " + " + wrap(e.args[1], 2, variable);
    case Expr::Kind::kSub:
      return wrap(e.args[0], 1, variable) + " - " + wrap(e.args[1], 2, variable);
    case Expr::Kind::kMul:
      return wrap(e.args[0], 2, variable) + "*" + wrap(e.args[1], 3, variable);
    case Expr::Kind::kDiv:
      return wrap(e.args[0], 2, variable) + "/" + wrap(e.args[1], 3, variable);
    case Expr::Kind::kPow: {
      const std::string k = e.value.get_num().get_str();
      return wrap(e.args[0], 5, variable) + "^" + (e.value < 0 ? "(" + k + ")" : k);
    }
  }
  return {};
}

}  // namespace spectral_rec
