#pragma once

#include "tdirac/dirac/pointwise.hpp"
#include "tdirac/lifts/lifts.hpp"
#include "tdirac/symexpr/exact_linalg.hpp"

#include <stdexcept>
#include <vector>

namespace tdirac::dirac {

using symexpr::Expr;
using symexpr::PolyMatrix;
using tensorcalc::ChartPtr;
using tensorcalc::TensorField;

/// Section (X, alpha) of TM + T*M.
struct DiracPair {
  TensorField X;
  TensorField alpha;

  DiracPair(TensorField X, TensorField alpha);
  static DiracPair zero(const ChartPtr& chart);

  const ChartPtr& chart() const { return X.chart(); }
  /// Coefficients [X^1..X^n | alpha_1..alpha_n].
  std::vector<Expr> row() const;
  static DiracPair from_row(const ChartPtr& chart, std::span<const Expr> row);
  bool is_zero() const { return X.is_zero() && alpha.is_zero(); }

  DiracPair& operator+=(const DiracPair& o);
  DiracPair& operator-=(const DiracPair& o);
  friend DiracPair operator+(DiracPair a, const DiracPair& b) { return a += b; }
  friend DiracPair operator-(DiracPair a, const DiracPair& b) { return a -= b; }
  friend DiracPair operator*(const Expr& f, const DiracPair& p) { return {f * p.X, f * p.alpha}; }
  friend bool operator==(const DiracPair&, const DiracPair&) = default;
};

std::string to_string(const DiracPair& p);

/// Ordered local basis of an (almost) Dirac structure.
class DiracBasis {
public:
  DiracBasis(ChartPtr chart, std::vector<DiracPair> pairs);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return chart_->dim(); }
  std::size_t size() const { return pairs_.size(); }
  const DiracPair& operator[](std::size_t i) const { return pairs_.at(i); }
  const std::vector<DiracPair>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  /// size() x 2n matrix of rows [X | alpha].
  PolyMatrix matrix() const;

private:
  ChartPtr chart_;
  std::vector<DiracPair> pairs_;
};

Expr pairing_g(const DiracPair& p, const DiracPair& q);
Expr form_omega(const DiracPair& p, const DiracPair& q);
DiracPair apply_F(const DiracPair& p);

/// ([X,Y], L_X beta - L_Y alpha + d omega(p,q)).
DiracPair courant_bracket(const DiracPair& p, const DiracPair& q);
/// ([X,Y], i(X)d beta - i(Y)d alpha + 1/2 d(beta(X) - alpha(Y))).
DiracPair courant_bracket_contracted(const DiracPair& p, const DiracPair& q);

struct NotClosed : std::domain_error {
  explicit NotClosed(const std::string& what) : std::domain_error(what) {}
};

/// Graph {(i(alpha)P, alpha)} spanned by (i(dx^k)P, dx^k).
DiracBasis from_poisson(const TensorField& P);
/// Graph {(X, i(X)sigma)} spanned by (d_k, i(d_k)sigma). Throws NotClosed.
DiracBasis from_presymplectic(const TensorField& sigma);

/// Symbolic g-isotropy of all pairs and rank n at each sample point.
Verdict check_almost_dirac(const DiracBasis& D, const CheckContext& ctx);

/// Whether `p` lies in the span of D over the fraction field; on failure
/// `residual` receives scale*p - (combination), which is nonzero.
bool span_contains(const DiracBasis& D, const DiracPair& p, DiracPair* residual = nullptr);
/// Same structure over the fraction field (mutual containment).
bool same_span(const DiracBasis& a, const DiracBasis& b);

/// Courant brackets of all basis pairs lie in the span.
Verdict check_integrable(const DiracBasis& D);

/// (B_i^C, eps_i^C) followed by (B_i^V, eps_i^V) on the tangent chart `tc`
/// (created when null).
DiracBasis tangent_lift(const DiracBasis& D, ChartPtr tc = nullptr);
/// (B_i^C, eps_i^V) followed by (d/dv^k, 0).
DiracBasis vertical_pullback(const DiracBasis& D, ChartPtr tc = nullptr);

/// ([Z,X] + X, L_Z alpha) in D for every basis pair (X, alpha).
Verdict check_homogeneous(const DiracBasis& D, const TensorField& Z);

/// D is the graph of a bivector: its form parts span T*M generically.
bool is_bivector_graph(const DiracBasis& D);

struct PresymplecticData {
  Point point;
  /// Rows: basis of A(D) at the point.
  QMatrix A;
  /// varpi(A_k, A_l) = alpha_k(A_l).
  QMatrix varpi;
  /// varpi antisymmetric and independent of the choice of the form parts.
  bool well_defined = true;
};

PresymplecticData presymplectic_data_at(const DiracBasis& D, const Point& point);
/// Rows spanning {(X, alpha) : X in A, alpha|_A = i(X)varpi} in R^{2n}.
QMatrix reconstruct_at(const QMatrix& A, const QMatrix& varpi, std::size_t n);

} // namespace tdirac::dirac
