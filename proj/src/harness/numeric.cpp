#include "tdirac/harness/numeric.hpp"

#include "tdirac/lifts/lifts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tdirac::harness {

double NumericTable::at(std::span<const std::size_t> idx) const {
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (std::ranges::equal(indices[i], idx)) return values[i];
  return 0.0;
}

NumericTable numeric_eval(const TensorField& t, const NumericPoint& point) {
  for (Var v : t.chart()->vars())
    if (!point.contains(v)) throw std::invalid_argument("numeric_eval: no value for " + v.name());
  NumericTable out;
  for (std::size_t f = 0; f < t.size(); ++f) {
    out.indices.push_back(t.index_at(f));
    out.values.push_back(symexpr::evaluate_numeric(t.coefficient(f), point));
  }
  return out;
}

NumericPoint to_numeric(const symexpr::Point& p) {
  NumericPoint out;
  for (const auto& [v, q] : p) out[v] = q.get_d();
  return out;
}

Eigen::MatrixXd to_numeric(const symexpr::QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

double finite_diff_check(const Expr& derivative, const Expr& base, Var v, std::span<const NumericPoint> points,
                         double h) {
  double worst = 0;
  for (const NumericPoint& p : points) {
    NumericPoint plus = p, minus = p;
    plus[v] += h;
    minus[v] -= h;
    const double fd = (symexpr::evaluate_numeric(base, plus) - symexpr::evaluate_numeric(base, minus)) / (2 * h);
    const double exact = symexpr::evaluate_numeric(derivative, p);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<std::size_t>((s.array() > tol * s(0)).count());
}

bool numeric_subspace_contains(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (b.rows() == 0) return true;
  if (a.rows() > 0 && a.cols() != b.cols())
    throw std::invalid_argument("numeric_subspace_contains: column counts differ");
  Eigen::MatrixXd ab(a.rows() + b.rows(), b.cols());
  if (a.rows() > 0) ab.topRows(a.rows()) = a;
  ab.bottomRows(b.rows()) = b;
  return numeric_rank(a, tol) == numeric_rank(ab, tol);
}

void NumericOracle::rank_decision(std::string_view label, const symexpr::QMatrix& m, std::size_t exact_rank) {
  ++decisions_;
  const std::size_t r = numeric_rank(to_numeric(m), tol_);
  if (r != exact_rank) {
    std::ostringstream s;
    s << label << ": exact rank " << exact_rank << ", numeric rank " << r;
    disagreements_.push_back(s.str());
  }
}

void NumericOracle::containment_decision(std::string_view label, const symexpr::QMatrix& a, const symexpr::QMatrix& b,
                                         bool exact) {
  ++decisions_;
  const bool c = numeric_subspace_contains(to_numeric(a), to_numeric(b), tol_);
  if (c != exact) {
    std::ostringstream s;
    s << label << ": exact containment " << exact << ", numeric " << c;
    disagreements_.push_back(s.str());
  }
}

void DerivativeAudit::record(double error, const std::string& what) {
  ++checked;
  if (error >= max_error) {
    max_error = error;
    worst = what;
  }
}

void audit_partials(DerivativeAudit& audit, const TensorField& t, std::span<const NumericPoint> points, double h) {
  const auto& chart = t.chart();
  for (std::size_t f = 0; f < t.size(); ++f) {
    const Expr& c = t.coefficient(f);
    if (c.is_zero()) continue;
    for (Var v : chart->vars()) {
      const double err = finite_diff_check(symexpr::differentiate(c, v), c, v, points, h);
      audit.record(err, "d(" + symexpr::render(c, chart->vars()) + ")/d" + v.name());
    }
  }
}

void audit_complete_lifts(DerivativeAudit& audit, const tensorcalc::ChartPtr& tc, const TensorField& t,
                          std::span<const NumericPoint> points, double h) {
  const std::size_t n = tc->base_dim();
  for (std::size_t f = 0; f < t.size(); ++f) {
    const Expr& c = t.coefficient(f);
    if (c.is_zero()) continue;
    const Expr lifted = lifts::complete_lift(tc, c);
    double worst = 0;
    for (const NumericPoint& p : points) {
      NumericPoint plus, minus;
      for (std::size_t i = 0; i < n; ++i) {
        const Var x = tc->var(i);
        const double xi = p.at(x), vi = p.at(tc->fiber(i));
        plus[x] = xi + h * vi;
        minus[x] = xi - h * vi;
      }
      const double fd = (symexpr::evaluate_numeric(c, plus) - symexpr::evaluate_numeric(c, minus)) / (2 * h);
      const double exact = symexpr::evaluate_numeric(lifted, p);
      worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
    audit.record(worst, "(" + symexpr::render(c, t.chart()->vars()) + ")^C");
  }
}

} // namespace tdirac::harness
