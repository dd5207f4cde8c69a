#pragma once

#include "tdirac/dirac/pointwise.hpp"
#include "tdirac/tensorcalc/tensor_field.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace tdirac::harness {

using symexpr::Expr;
using symexpr::NumericPoint;
using symexpr::Var;
using tensorcalc::TensorField;

/// Floating values of the stored coefficients, in storage order.
struct NumericTable {
  std::vector<tensorcalc::Index> indices;
  std::vector<double> values;
  double at(std::span<const std::size_t> idx) const;
};

/// Throws std::invalid_argument when `point` misses a chart coordinate.
NumericTable numeric_eval(const TensorField& t, const NumericPoint& point);

NumericPoint to_numeric(const symexpr::Point& p);
Eigen::MatrixXd to_numeric(const symexpr::QMatrix& m);

/// Largest |central difference - derivative| / max(1, |derivative|) over `points`.
double finite_diff_check(const Expr& derivative, const Expr& base, Var v, std::span<const NumericPoint> points,
                         double h = 1e-5);

/// Number of singular values above tol * (largest singular value).
std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol);
/// rank(A) == rank(A stacked with B), both at the same relative threshold.
bool numeric_subspace_contains(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol);

/// Replays every exact rank and containment decision in floating point and
/// records the ones that disagree.
class NumericOracle : public dirac::DecisionSink {
public:
  explicit NumericOracle(double tol = 1e-9) : tol_(tol) {}

  void rank_decision(std::string_view label, const symexpr::QMatrix& m, std::size_t exact_rank) override;
  void containment_decision(std::string_view label, const symexpr::QMatrix& a, const symexpr::QMatrix& b,
                            bool exact) override;

  std::size_t decisions() const { return decisions_; }
  const std::vector<std::string>& disagreements() const { return disagreements_; }

private:
  double tol_;
  std::size_t decisions_ = 0;
  std::vector<std::string> disagreements_;
};

/// Finite-difference audit of symbolic derivatives.
struct DerivativeAudit {
  std::size_t checked = 0;
  double max_error = 0;
  std::string worst; // description of the worst case

  void record(double error, const std::string& what);
};

/// Every first partial of every coefficient of `t` against central differences.
void audit_partials(DerivativeAudit& audit, const TensorField& t, std::span<const NumericPoint> points,
                    double h = 1e-5);
/// Complete lifts of the coefficients of `t` against the directional
/// derivative d/ds f(x + s v) at s = 0; `tc` is a tangent chart over t's chart.
void audit_complete_lifts(DerivativeAudit& audit, const tensorcalc::ChartPtr& tc, const TensorField& t,
                          std::span<const NumericPoint> points, double h = 1e-5);

} // namespace tdirac::harness
