#include "tdirac/symexpr/parser.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace tdirac::symexpr {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message),
      kind_(kind), position_(position) {}

namespace {

class Parser {
public:
  Parser(std::string_view text, std::span<const std::string> declared)
      : text_(text), declared_(declared) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::Syntax) {
    throw ParseError(kind, pos_, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e += term();
      else if (accept('-')) e -= term();
      else return e;
    }
  }

  Expr term() {
    const bool negate = accept('-');
    Expr e = factor();
    while (accept('*')) e *= factor();
    return negate ? -e : e;
  }

  Expr factor() {
    Expr base = atom();
    if (!accept('^')) return base;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent", ParseError::Kind::NegativeExponent);
    const auto at = pos_;
    const std::string d = digits();
    if (d.empty()) fail("expected unsigned integer exponent");
    if (d.size() > 4) {
      pos_ = at;
      fail("exponent too large");
    }
    return base.pow(static_cast<std::uint32_t>(std::stoul(d)));
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr rational() {
    const std::string num = digits();
    Rational q(mpz_class(num, 10));
    const auto save = pos_;
    if (accept('/')) {
      skip_ws();
      const auto at = pos_;
      const std::string den = digits();
      if (den.empty()) {
        pos_ = at;
        fail("expected unsigned integer denominator (rational functions are not supported)");
      }
      mpz_class d(den, 10);
      if (d == 0) {
        pos_ = at;
        fail("zero denominator");
      }
      q = Rational(mpz_class(num, 10), d);
      q.canonicalize();
    } else {
      pos_ = save;
    }
    return Expr(q);
  }

  Expr variable() {
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (std::find(declared_.begin(), declared_.end(), name) == declared_.end()) {
      pos_ = start;
      fail("undeclared variable '" + name + "'", ParseError::Kind::UndeclaredVariable);
    }
    return Expr::variable(Var::named(name));
  }

  std::string_view text_;
  std::span<const std::string> declared_;
  std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text, std::span<const std::string> declared) {
  return Parser(text, declared).run();
}

} // namespace tdirac::symexpr
