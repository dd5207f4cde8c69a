#include "tdirac/lifts/lifts.hpp"

#include <optional>
#include <stdexcept>

namespace tdirac::lifts {

using tensorcalc::Index;
using tensorcalc::Signature;

namespace {

void require_tangent_of(const ChartPtr& tc, const ChartPtr& base, const char* what) {
  if (!tc->is_tangent()) throw std::invalid_argument(std::string(what) + ": not a tangent chart");
  if (base && !tensorcalc::same_chart(tc->base(), base))
    throw std::invalid_argument(std::string(what) + ": field does not live on the base chart");
}

} // namespace

ChartPtr tangent_chart(const ChartPtr& base, std::vector<std::string> fiber_names) {
  return tensorcalc::Chart::tangent_of(base, std::move(fiber_names));
}

Expr vertical_lift(const ChartPtr& tc, const Expr& f) {
  require_tangent_of(tc, nullptr, "vertical_lift");
  return f;
}

Expr complete_lift(const ChartPtr& tc, const Expr& f) {
  require_tangent_of(tc, nullptr, "complete_lift");
  const std::size_t n = tc->base_dim();
  Expr s;
  for (std::size_t i = 0; i < n; ++i) {
    Expr d = symexpr::differentiate(f, tc->var(i));
    if (!d.is_zero()) s += Expr::variable(tc->fiber(i)) * d;
  }
  return s;
}

Expr linear_function(const ChartPtr& tc, const TensorField& alpha) {
  require_tangent_of(tc, alpha.chart(), "linear_function");
  if (!(alpha.signature() == Signature::form(1))) throw std::invalid_argument("linear_function: expects a 1-form");
  Expr s;
  for (std::size_t i = 0; i < alpha.dim(); ++i)
    if (!alpha.coefficient(i).is_zero()) s += alpha.coefficient(i) * Expr::variable(tc->fiber(i));
  return s;
}

TensorField euler_field(const ChartPtr& tc) {
  require_tangent_of(tc, nullptr, "euler_field");
  const std::size_t n = tc->base_dim();
  std::vector<Expr> c(2 * n);
  for (std::size_t i = 0; i < n; ++i) c[n + i] = Expr::variable(tc->fiber(i));
  return TensorField::vector_field(tc, std::move(c));
}

EndField tangent_structure(const ChartPtr& tc) {
  require_tangent_of(tc, nullptr, "tangent_structure");
  const std::size_t n = tc->base_dim();
  TensorField t(tc, Signature::general(1, 1));
  for (std::size_t i = 0; i < n; ++i) t.set(Index{n + i, i}, Expr(1));
  return EndField(std::move(t));
}

namespace {

Signature lifted(const Signature& s) {
  switch (s.kind) {
  case tensorcalc::Kind::Form: return Signature::form(s.co);
  case tensorcalc::Kind::Multivector: return Signature::multivector(s.contra);
  default: return Signature::general(s.contra, s.co);
  }
}

/// Frame index on TM of slot s of `idx`, complete (C) or vertical (V) lift.
Index frame_lift(const Signature& sig, const Index& idx, std::size_t n, std::optional<unsigned> complete_slot) {
  Index out(idx.size());
  for (unsigned s = 0; s < idx.size(); ++s) {
    const bool c = complete_slot && *complete_slot == s;
    // upper: V -> d/dv, C -> d/dx ; lower: V -> dx, C -> dv
    const bool shifted = sig.upper(s) ? !c : c;
    out[s] = idx[s] + (shifted ? n : 0);
  }
  return out;
}

} // namespace

TensorField vertical_lift(const ChartPtr& tc, const TensorField& t) {
  require_tangent_of(tc, t.chart(), "vertical_lift");
  const std::size_t n = tc->base_dim();
  const Signature sig = t.signature();
  TensorField out(tc, lifted(sig));
  for (std::size_t f = 0; f < t.size(); ++f) {
    const Expr& c = t.coefficient(f);
    if (c.is_zero()) continue;
    out.add(frame_lift(sig, t.index_at(f), n, std::nullopt), c);
  }
  return out;
}

TensorField complete_lift(const ChartPtr& tc, const TensorField& t) {
  require_tangent_of(tc, t.chart(), "complete_lift");
  const std::size_t n = tc->base_dim();
  const Signature sig = t.signature();
  TensorField out(tc, lifted(sig));
  for (std::size_t f = 0; f < t.size(); ++f) {
    const Expr& c = t.coefficient(f);
    if (c.is_zero()) continue;
    const Index& idx = t.index_at(f);
    Expr cc = complete_lift(tc, c);
    if (!cc.is_zero()) out.add(frame_lift(sig, idx, n, std::nullopt), cc);
    for (unsigned s = 0; s < sig.rank(); ++s) out.add(frame_lift(sig, idx, n, s), c);
  }
  return out;
}

} // namespace tdirac::lifts
