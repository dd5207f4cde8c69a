#pragma once

#include "tdirac/symexpr/expr.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tdirac::symexpr {

/// Deterministic stream of bounded rationals (splitmix64 underneath).
class RationalSampler {
public:
  explicit RationalSampler(std::uint64_t seed, std::int64_t range = 10, std::int64_t max_den = 7)
      : state_(seed), range_(range), max_den_(max_den) {}

  std::uint64_t next_u64();
  /// Uniform in [lo, hi].
  std::int64_t next_int(std::int64_t lo, std::int64_t hi);
  /// p/q with 1 <= q <= max_den and |p/q| <= range.
  Rational next_rational();

private:
  std::uint64_t state_;
  std::int64_t range_;
  std::int64_t max_den_;
};

/// `count` points assigning every variable in `vars`; variables in `zeroed`
/// are pinned to 0 (used to sample points of {y = 0}).
std::vector<Point> sample_points(std::span<const Var> vars, std::size_t count, std::uint64_t seed,
                                 std::span<const Var> zeroed = {}, std::int64_t range = 10,
                                 std::int64_t max_den = 7);

} // namespace tdirac::symexpr
