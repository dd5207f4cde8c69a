#include "tdirac/symexpr/exact_linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace tdirac::symexpr {

QMatrix evaluate(const PolyMatrix& m, const Point& point) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q(r, c) = evaluate(m(r, c), point);
  return q;
}

PolyMatrix substitute(const PolyMatrix& m, const Substitution& s) {
  PolyMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = substitute(m(r, c), s);
  return out;
}

// ------------------------------------------------------------ over Q

QEchelon row_reduce(const QMatrix& m) {
  QEchelon e{m, {}};
  QMatrix& a = e.rref;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

std::size_t rank(const QMatrix& m) { return row_reduce(m).rank(); }

std::vector<QVector> nullspace(const QMatrix& m) {
  const QEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector x(m.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivot_cols[i]] = -e.rref(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<QVector> left_nullspace(const QMatrix& m) { return nullspace(m.transposed()); }

bool rowspace_contains(const QMatrix& a, const QMatrix& b) {
  if (b.rows() == 0) return true;
  if (a.rows() == 0) return rank(b) == 0;
  return rank(a) == rank(a.stacked(b));
}

QMatrix row_basis(const QMatrix& m) {
  const QEchelon e = row_reduce(m);
  QMatrix out(e.rank(), m.cols());
  for (std::size_t r = 0; r < e.rank(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = e.rref(r, c);
  return out;
}

// -------------------------------------------------- over Q[vars]

FractionFreeEchelon::FractionFreeEchelon(const PolyMatrix& m) : reduced_(m) {
  PolyMatrix& a = reduced_;
  std::vector<bool> row_used(a.rows(), false);
  std::vector<bool> col_used(a.cols(), false);
  Expr previous(1);
  for (;;) {
    // Cheapest nonzero pivot keeps the minors small; ties broken by lowest
    // row, then lowest column.
    std::optional<Pivot> best;
    std::tuple<std::size_t, std::uint32_t> best_cost{};
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (row_used[r]) continue;
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (col_used[c] || a(r, c).is_zero()) continue;
        auto cost = std::make_tuple(a(r, c).size(), a(r, c).degree());
        if (!best || cost < best_cost) {
          best = Pivot{r, c};
          best_cost = cost;
        }
      }
    }
    if (!best) break;
    const auto [pr, pc] = *best;
    const Expr p = a(pr, pc);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == pr) continue;
      const Expr factor = a(r, pc);
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (c == pc) continue;
        Expr num = p * a(r, c);
        if (!factor.is_zero() && !a(pr, c).is_zero()) num -= factor * a(pr, c);
        if (num.is_zero()) {
          a(r, c) = Expr{};
          continue;
        }
        auto q = divide_exact(num, previous);
        if (!q) throw std::logic_error("FractionFreeEchelon: inexact division");
        a(r, c) = std::move(*q);
      }
      a(r, pc) = Expr{};
    }
    row_used[pr] = true;
    col_used[pc] = true;
    pivots_.push_back(*best);
    previous = p;
  }
  scale_ = previous;
  for (const auto& pv : pivots_) pivot_cols_.push_back(pv.col);
}

std::vector<Expr> FractionFreeEchelon::residual(std::span<const Expr> v) const {
  if (v.size() != reduced_.cols()) throw std::invalid_argument("residual: column mismatch");
  std::vector<Expr> out(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) out[c] = scale_ * v[c];
  for (const auto& pv : pivots_) {
    const Expr& coeff = v[pv.col];
    if (coeff.is_zero()) continue;
    for (std::size_t c = 0; c < v.size(); ++c) {
      const Expr& rc = reduced_(pv.row, c);
      if (!rc.is_zero()) out[c] -= coeff * rc;
    }
  }
  return out;
}

bool FractionFreeEchelon::contains(std::span<const Expr> v) const {
  const auto r = residual(v);
  return std::all_of(r.begin(), r.end(), [](const Expr& e) { return e.is_zero(); });
}

std::vector<std::vector<Expr>> FractionFreeEchelon::nullspace() const {
  std::vector<bool> is_pivot(reduced_.cols(), false);
  for (const auto& pv : pivots_) is_pivot[pv.col] = true;
  std::vector<std::vector<Expr>> basis;
  for (std::size_t f = 0; f < reduced_.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Expr> x(reduced_.cols());
    x[f] = scale_;
    for (const auto& pv : pivots_) x[pv.col] = -reduced_(pv.row, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t generic_rank(const PolyMatrix& m) { return FractionFreeEchelon(m).rank(); }

bool generic_rowspace_contains(const PolyMatrix& a, const PolyMatrix& b) {
  const FractionFreeEchelon e(a);
  for (std::size_t r = 0; r < b.rows(); ++r)
    if (!e.contains(b.row(r))) return false;
  return true;
}

std::vector<Expr> simplify_vector(std::vector<Expr> v) {
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero() && !v[i].is_constant()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::make_tuple(v[a].degree(), v[a].size(), a) < std::make_tuple(v[b].degree(), v[b].size(), b);
    });
    for (auto i : order) {
      const Expr d = v[i];
      std::vector<Expr> q;
      bool all = true;
      for (const auto& e : v) {
        auto r = e.is_zero() ? std::optional<Expr>(Expr{}) : divide_exact(e, d);
        if (!r) {
          all = false;
          break;
        }
        q.push_back(std::move(*r));
      }
      if (all) {
        v = std::move(q);
        changed = true;
        break;
      }
    }
  }
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    const Rational lc = e.leading().coeff;
    for (auto& x : v) x = x.scaled(1 / lc);
    break;
  }
  return v;
}

} // namespace tdirac::symexpr
