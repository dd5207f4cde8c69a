#pragma once

#include "tdirac/symexpr/expr.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdirac::tensorcalc {

using symexpr::Expr;
using symexpr::Var;

/// Partition of a chart's coordinates into those along a submanifold N
/// (x^u) and those along the fibers of a tubular neighbourhood (y^a), so that
/// N = {y = 0}. Entries are positions in the chart's variable list.
struct TubularSplit {
  std::vector<std::size_t> tangent;
  std::vector<std::size_t> normal;

  /// Throws std::invalid_argument unless the two lists partition [0, dim)
  /// and both are nonempty.
  void validate(std::size_t dim) const;
  friend bool operator==(const TubularSplit&, const TubularSplit&) = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Ordered coordinate system. A tangent chart of a base chart C lists the base
/// variables x^1..x^n followed by the fiber variables v^1..v^n.
class Chart {
public:
  static ChartPtr make(std::vector<std::string> names, std::optional<TubularSplit> split = {});

  /// Tangent chart of `base`. Default fiber names map x<k> to v<k>, y<k> to
  /// w<k> and anything else to v_<name>.
  static ChartPtr tangent_of(const ChartPtr& base, std::vector<std::string> fiber_names = {});

  /// Copy of `chart` (tangent flag included) carrying `split`.
  static ChartPtr with_split(const ChartPtr& chart, TubularSplit split);

  std::size_t dim() const { return vars_.size(); }
  std::span<const Var> vars() const { return vars_; }
  Var var(std::size_t i) const { return vars_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(Var v) const;
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool is_tangent() const { return base_ != nullptr; }
  /// Base chart of a tangent chart (nullptr otherwise).
  const ChartPtr& base() const { return base_; }
  std::size_t base_dim() const { return base_ ? base_->dim() : dim(); }
  /// Fiber variable v^i of a tangent chart.
  Var fiber(std::size_t i) const;

  const std::optional<TubularSplit>& split() const { return split_; }

  /// Same coordinates in the same order.
  friend bool operator==(const Chart& a, const Chart& b) { return a.vars_ == b.vars_; }

private:
  Chart() = default;
  std::vector<std::string> names_;
  std::vector<Var> vars_;
  ChartPtr base_;
  std::optional<TubularSplit> split_;
};

bool same_chart(const ChartPtr& a, const ChartPtr& b);
void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what);

} // namespace tdirac::tensorcalc
