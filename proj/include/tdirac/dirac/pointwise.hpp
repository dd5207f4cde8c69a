#pragma once

#include "tdirac/symexpr/exact_linalg.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tdirac::dirac {

using symexpr::Point;
using symexpr::QMatrix;

/// Observer for every exact pointwise decision, so that an independent
/// (numeric) oracle can replay it.
class DecisionSink {
public:
  virtual ~DecisionSink() = default;
  virtual void rank_decision(std::string_view label, const QMatrix& m, std::size_t exact_rank) = 0;
  /// `exact` is rowspace(b) within rowspace(a).
  virtual void containment_decision(std::string_view label, const QMatrix& a, const QMatrix& b, bool exact) = 0;
};

/// Seeded sampling plan plus optional observer for pointwise decisions.
struct CheckContext {
  std::size_t count = 25;
  std::uint64_t seed = 0;
  /// Coordinates p/q with |p/q| <= range and q <= max_den.
  std::int64_t range = 10;
  std::int64_t max_den = 7;
  DecisionSink* sink = nullptr;
  /// Also decide maximality by rank over the fraction field.
  bool generic_rank = false;

  /// `count` points over `vars`, with the variables in `zeroed` pinned to 0.
  std::vector<Point> points(std::span<const symexpr::Var> vars, std::span<const symexpr::Var> zeroed = {}) const;

  std::size_t rank(std::string_view label, const QMatrix& m) const;
  bool contains(std::string_view label, const QMatrix& a, const QMatrix& b) const;
};

struct Verdict {
  bool holds = true;
  std::string certificate;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return holds; }
};

std::string describe(const Point& p);

} // namespace tdirac::dirac
