#pragma once

#include "tdirac/symexpr/expr.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdirac::symexpr {

/// Parse failure; `position` is the 0-based byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
  enum class Kind { Syntax, UndeclaredVariable, NegativeExponent };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

private:
  Kind kind_;
  std::size_t position_;
};

/// Parses a polynomial over the declared variable names.
///
///   expr     := term (('+'|'-') term)*
///   term     := ['-'] factor ('*' factor)*
///   factor   := atom ('^' uint)?
///   atom     := rational | var | '(' expr ')'
///   rational := int ('/' uint)?
///
/// Whitespace is insignificant. The optional leading '-' of a term is the
/// signed-int reading of the grammar, extended to any factor.
Expr parse(std::string_view text, std::span<const std::string> declared);

} // namespace tdirac::symexpr
