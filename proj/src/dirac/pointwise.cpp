#include "tdirac/dirac/pointwise.hpp"

#include "tdirac/symexpr/sampling.hpp"

namespace tdirac::dirac {

std::vector<Point> CheckContext::points(std::span<const symexpr::Var> vars, std::span<const symexpr::Var> zeroed) const {
  return symexpr::sample_points(vars, count, seed, zeroed, range, max_den);
}

std::size_t CheckContext::rank(std::string_view label, const QMatrix& m) const {
  const std::size_t r = symexpr::rank(m);
  if (sink) sink->rank_decision(label, m, r);
  return r;
}

bool CheckContext::contains(std::string_view label, const QMatrix& a, const QMatrix& b) const {
  const bool c = symexpr::rowspace_contains(a, b);
  if (sink) sink->containment_decision(label, a, b, c);
  return c;
}

std::string describe(const Point& p) {
  std::string s = "(";
  bool first = true;
  for (const auto& [v, q] : p) {
    if (!first) s += ", ";
    first = false;
    s += v.name() + "=" + symexpr::to_string(q);
  }
  return s + ")";
}

} // namespace tdirac::dirac
