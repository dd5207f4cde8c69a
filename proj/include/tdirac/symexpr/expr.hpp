#pragma once

#include "tdirac/symexpr/rational.hpp"
#include "tdirac/symexpr/var.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tdirac::symexpr {

/// Power product of variables. Factors are kept sorted by variable id with
/// strictly positive exponents, so equal monomials compare equal structurally.
class Monomial {
public:
  using Factor = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  static Monomial of(Var v, std::uint32_t exponent = 1);

  std::span<const Factor> factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(Var v) const;
  bool is_one() const { return factors_.empty(); }

  /// Monomial with the exponent of `v` lowered by one (precondition: exponent(v) > 0).
  Monomial lowered(Var v) const;
  Monomial without(Var v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// a / b when b divides a.
  static std::optional<Monomial> quotient(const Monomial& a, const Monomial& b);

private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic comparison: <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Rational coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

using Point = std::map<Var, Rational>;
using NumericPoint = std::map<Var, double>;
class Expr;
using Substitution = std::map<Var, Expr>;

/// Multivariate polynomial over Q in canonical form: terms sorted by
/// decreasing grlex order, no zero coefficients. Structural equality is
/// mathematical equality.
class Expr {
public:
  Expr() = default;
  Expr(const Rational& c);
  Expr(long c) : Expr(Rational(c)) {}
  Expr(int c) : Expr(Rational(c)) {}

  static Expr variable(Var v);
  static Expr monomial(Rational c, Monomial m);

  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 when absent).
  Rational constant_term() const;
  std::uint32_t degree() const;
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr differentiate(const Expr& e, Var v);
  friend bool operator==(const Expr&, const Expr&) = default;

  Expr scaled(const Rational& c) const;
  Expr pow(std::uint32_t k) const;

private:
  explicit Expr(std::vector<Term> canonical) : terms_(std::move(canonical)) {}
  static Expr from_unsorted(std::vector<Term> terms);

  std::vector<Term> terms_;
};

Expr differentiate(const Expr& e, Var v);

/// Exact value; throws std::invalid_argument naming the first unassigned variable.
Rational evaluate(const Expr& e, const Point& point);
double evaluate_numeric(const Expr& e, const NumericPoint& point);

Expr substitute(const Expr& e, const Substitution& assignments);

/// Quotient when `divisor` divides `dividend` exactly in Q[vars], else nullopt.
std::optional<Expr> divide_exact(const Expr& dividend, const Expr& divisor);

/// Variables occurring in `e`, ascending by id.
std::vector<Var> variables(const Expr& e);
bool depends_on(const Expr& e, Var v);

/// Text in the parser grammar, e.g. "x1^2 - 1/2*x2*v1 + 3".
std::string render(const Expr& e);
/// As above with terms in grlex order over `order` (e.g. a chart's declared
/// variables); variables missing from `order` rank after it, by id.
std::string render(const Expr& e, std::span<const Var> order);

} // namespace tdirac::symexpr
