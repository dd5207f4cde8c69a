#include "tdirac/tensorcalc/chart.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tdirac::tensorcalc {

void TubularSplit::validate(std::size_t dim) const {
  if (tangent.empty() || normal.empty())
    throw std::invalid_argument("tubular split: both tangent and normal parts must be nonempty");
  std::vector<bool> seen(dim, false);
  for (auto list : {&tangent, &normal})
    for (auto i : *list) {
      if (i >= dim) throw std::invalid_argument("tubular split: index out of range");
      if (seen[i]) throw std::invalid_argument("tubular split: index listed twice");
      seen[i] = true;
    }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("tubular split: does not cover every coordinate");
}

ChartPtr Chart::make(std::vector<std::string> names, std::optional<TubularSplit> split) {
  if (names.empty()) throw std::invalid_argument("chart: dimension 0 is not allowed");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) throw std::invalid_argument("chart: duplicate variable name");
  auto c = std::shared_ptr<Chart>(new Chart());
  for (const auto& n : names) c->vars_.push_back(Var::named(n));
  c->names_ = std::move(names);
  if (split) split->validate(c->dim());
  c->split_ = std::move(split);
  return c;
}

namespace {

std::string default_fiber_name(const std::string& base) {
  if (base.size() >= 1 && base[0] == 'x') return "v" + base.substr(1);
  if (base.size() >= 1 && base[0] == 'y') return "w" + base.substr(1);
  return "v_" + base;
}

} // namespace

ChartPtr Chart::tangent_of(const ChartPtr& base, std::vector<std::string> fiber_names) {
  if (!base) throw std::invalid_argument("tangent_of: null base chart");
  if (fiber_names.empty())
    for (const auto& n : base->names_) fiber_names.push_back(default_fiber_name(n));
  if (fiber_names.size() != base->dim())
    throw std::invalid_argument("tangent_of: need exactly one fiber name per base variable");
  std::vector<std::string> all = base->names_;
  all.insert(all.end(), fiber_names.begin(), fiber_names.end());
  auto made = make(std::move(all));
  auto c = std::const_pointer_cast<Chart>(made);
  c->base_ = base;
  return c;
}

ChartPtr Chart::with_split(const ChartPtr& chart, TubularSplit split) {
  split.validate(chart->dim());
  auto c = std::make_shared<Chart>(*chart);
  c->split_ = std::move(split);
  return c;
}

std::optional<std::size_t> Chart::index_of(Var v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

std::optional<std::size_t> Chart::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Var Chart::fiber(std::size_t i) const {
  if (!base_) throw std::logic_error("fiber: not a tangent chart");
  return vars_.at(base_->dim() + i);
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what) {
  if (!same_chart(a, b)) throw std::invalid_argument(std::string(what) + ": fields live on different charts");
}

} // namespace tdirac::tensorcalc
