#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_rec/error.hpp"
#include "spectral_rec/rational_function.hpp"

namespace spectral_rec {

/// Expression tree over rational literals, one variable, + - * / and integer powers.
struct Expr {
  enum class Kind { kLiteral, kVariable, kNeg, kAdd, kSub, kMul, kDiv, kPow };

  Kind kind = Kind::kLiteral;
  /// Literal value (non-negative integer as written), or the exponent of kPow.
  Rational value = 0;
  std::vector<Expr> args;

  friend bool operator==(const Expr&, const Expr&) = default;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::kSyntax, message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Precedence ^ > unary - > * / > binary + -, left association except ^.
/// Throws SyntaxError with the byte offset of the offending token.
Expr parse_expression_ast(std::string_view text, char variable = 'z');

/// Throws Error(kMalformedInput) on division by the zero polynomial.
RationalFunction to_rational_function(const Expr& e);

RationalFunction parse_expression(std::string_view text, char variable = 'z');

/// Minimal-parenthesis rendering that parses back to the same tree.
std::string print(const Expr& e, char variable = 'z');

}  // namespace spectral_rec
