#include "tdirac/symexpr/sampling.hpp"

#include <algorithm>

namespace tdirac::symexpr {

std::uint64_t RationalSampler::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t RationalSampler::next_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_u64() % span);
}

Rational RationalSampler::next_rational() {
  const std::int64_t den = next_int(1, max_den_);
  const std::int64_t num = next_int(-range_ * den, range_ * den);
  Rational q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

std::vector<Point> sample_points(std::span<const Var> vars, std::size_t count, std::uint64_t seed,
                                 std::span<const Var> zeroed, std::int64_t range,
                                 std::int64_t max_den) {
  RationalSampler rng(seed, range, max_den);
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Point p;
    for (Var v : vars) {
      const bool pinned = std::find(zeroed.begin(), zeroed.end(), v) != zeroed.end();
      p[v] = pinned ? Rational(0) : rng.next_rational();
    }
    points.push_back(std::move(p));
  }
  return points;
}

} // namespace tdirac::symexpr
