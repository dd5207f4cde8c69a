#pragma once

#include "tdirac/symexpr/expr.hpp"
#include "tdirac/symexpr/parser.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace tdirac::testing {

using symexpr::Expr;
using symexpr::Var;

/// Deterministic random polynomials with small integer coefficients.
class PolyGen {
public:
  explicit PolyGen(std::uint64_t seed) : rng_(seed) {}

  int coin(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Expr poly(std::span<const Var> vars, unsigned max_degree, int max_terms = 4) {
    Expr e;
    const int terms = coin(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Expr m(coin(-3, 3));
      const unsigned deg = static_cast<unsigned>(coin(0, static_cast<int>(max_degree)));
      for (unsigned d = 0; d < deg; ++d) m *= Expr::variable(vars[coin(0, static_cast<int>(vars.size()) - 1)]);
      e += m;
    }
    return e;
  }

  std::vector<Expr> polys(std::span<const Var> vars, std::size_t count, unsigned max_degree) {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(poly(vars, max_degree));
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline std::vector<Var> vars_of(std::initializer_list<const char*> names) {
  std::vector<Var> out;
  for (auto n : names) out.push_back(Var::named(n));
  return out;
}

inline Expr P(const std::string& text, std::initializer_list<const char*> names) {
  std::vector<std::string> declared(names.begin(), names.end());
  return symexpr::parse(text, declared);
}

} // namespace tdirac::testing
