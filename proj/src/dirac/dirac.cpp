#include "tdirac/dirac/dirac.hpp"

#include <algorithm>
#include <sstream>

namespace tdirac::dirac {

using symexpr::FractionFreeEchelon;
using symexpr::Rational;
using tensorcalc::Signature;
using namespace tensorcalc;

// ------------------------------------------------------------------ pairs

DiracPair::DiracPair(TensorField X_, TensorField alpha_) : X(std::move(X_)), alpha(std::move(alpha_)) {
  if (!(X.signature() == Signature::multivector(1)) || !(alpha.signature() == Signature::form(1)))
    throw std::invalid_argument("DiracPair: expects a vector field and a 1-form");
  require_same_chart(X.chart(), alpha.chart(), "DiracPair");
}

DiracPair DiracPair::zero(const ChartPtr& chart) {
  return {TensorField(chart, Signature::multivector(1)), TensorField(chart, Signature::form(1))};
}

std::vector<Expr> DiracPair::row() const {
  std::vector<Expr> r(X.coefficients().begin(), X.coefficients().end());
  r.insert(r.end(), alpha.coefficients().begin(), alpha.coefficients().end());
  return r;
}

DiracPair DiracPair::from_row(const ChartPtr& chart, std::span<const Expr> row) {
  const std::size_t n = chart->dim();
  if (row.size() != 2 * n) throw std::invalid_argument("DiracPair::from_row: length mismatch");
  return {TensorField::vector_field(chart, {row.begin(), row.begin() + static_cast<long>(n)}),
          TensorField::one_form(chart, {row.begin() + static_cast<long>(n), row.end()})};
}

DiracPair& DiracPair::operator+=(const DiracPair& o) {
  X += o.X;
  alpha += o.alpha;
  return *this;
}

DiracPair& DiracPair::operator-=(const DiracPair& o) {
  X -= o.X;
  alpha -= o.alpha;
  return *this;
}

std::string to_string(const DiracPair& p) {
  std::ostringstream os;
  os << "(X: {" << tensorcalc::to_string(p.X) << "}, alpha: {" << tensorcalc::to_string(p.alpha) << "})";
  return os.str();
}

DiracBasis::DiracBasis(ChartPtr chart, std::vector<DiracPair> pairs) : chart_(std::move(chart)), pairs_(std::move(pairs)) {
  for (const auto& p : pairs_) require_same_chart(chart_, p.chart(), "DiracBasis");
}

PolyMatrix DiracBasis::matrix() const {
  PolyMatrix m(pairs_.size(), 2 * dim());
  for (std::size_t r = 0; r < pairs_.size(); ++r) {
    const auto row = pairs_[r].row();
    for (std::size_t c = 0; c < row.size(); ++c) m(r, c) = row[c];
  }
  return m;
}

// --------------------------------------------------------------- algebra

Expr pairing_g(const DiracPair& p, const DiracPair& q) {
  return (contract(p.alpha, q.X) + contract(q.alpha, p.X)).scaled(Rational(1, 2));
}

Expr form_omega(const DiracPair& p, const DiracPair& q) {
  return (contract(p.alpha, q.X) - contract(q.alpha, p.X)).scaled(Rational(1, 2));
}

DiracPair apply_F(const DiracPair& p) { return {p.X, -p.alpha}; }

DiracPair courant_bracket(const DiracPair& p, const DiracPair& q) {
  const auto& c = p.chart();
  TensorField form = lie_derivative(p.X, q.alpha) - lie_derivative(q.X, p.alpha) +
                     exterior_derivative(TensorField::function(c, form_omega(p, q)));
  return {lie_bracket(p.X, q.X), std::move(form)};
}

DiracPair courant_bracket_contracted(const DiracPair& p, const DiracPair& q) {
  const auto& c = p.chart();
  const Expr half = (contract(q.alpha, p.X) - contract(p.alpha, q.X)).scaled(Rational(1, 2));
  TensorField form = interior_product(p.X, exterior_derivative(q.alpha)) -
                     interior_product(q.X, exterior_derivative(p.alpha)) +
                     exterior_derivative(TensorField::function(c, half));
  return {lie_bracket(p.X, q.X), std::move(form)};
}

DiracBasis from_poisson(const TensorField& P) {
  if (!(P.signature() == Signature::multivector(2))) throw std::invalid_argument("from_poisson: expects a bivector");
  const auto& c = P.chart();
  std::vector<DiracPair> pairs;
  for (std::size_t k = 0; k < c->dim(); ++k) {
    TensorField a = TensorField::coordinate_covector(c, k);
    pairs.emplace_back(interior_product(a, P), a);
  }
  return {c, std::move(pairs)};
}

DiracBasis from_presymplectic(const TensorField& sigma) {
  if (!(sigma.signature() == Signature::form(2))) throw std::invalid_argument("from_presymplectic: expects a 2-form");
  if (!exterior_derivative(sigma).is_zero()) throw NotClosed("from_presymplectic: the 2-form is not closed");
  const auto& c = sigma.chart();
  std::vector<DiracPair> pairs;
  for (std::size_t k = 0; k < c->dim(); ++k) {
    TensorField X = TensorField::coordinate_vector(c, k);
    TensorField a = interior_product(X, sigma);
    pairs.emplace_back(std::move(X), std::move(a));
  }
  return {c, std::move(pairs)};
}

// ---------------------------------------------------------------- checks

Verdict check_almost_dirac(const DiracBasis& D, const CheckContext& ctx) {
  const std::size_t n = D.dim();
  if (D.size() != n)
    return Verdict::fail("basis has " + std::to_string(D.size()) + " pairs, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Expr g = pairing_g(D[i], D[j]);
      if (!g.is_zero())
        return Verdict::fail("not isotropic: g(b" + std::to_string(i + 1) + ", b" + std::to_string(j + 1) +
                             ") = " + symexpr::render(g, D.chart()->vars()));
    }
  const PolyMatrix m = D.matrix();
  if (ctx.generic_rank && symexpr::generic_rank(m) != n) return Verdict::fail("rank deficient over the fraction field");
  for (const Point& p : ctx.points(D.chart()->vars())) {
    const std::size_t r = ctx.rank("almost-dirac rank", symexpr::evaluate(m, p));
    if (r != n) return Verdict::fail("rank " + std::to_string(r) + " < " + std::to_string(n) + " at " + describe(p));
  }
  return Verdict::pass();
}

bool span_contains(const DiracBasis& D, const DiracPair& p, DiracPair* residual) {
  FractionFreeEchelon ech(D.matrix());
  const auto row = p.row();
  auto res = ech.residual(row);
  const bool in = std::all_of(res.begin(), res.end(), [](const Expr& e) { return e.is_zero(); });
  if (!in && residual) *residual = DiracPair::from_row(D.chart(), res);
  return in;
}

bool same_span(const DiracBasis& a, const DiracBasis& b) {
  require_same_chart(a.chart(), b.chart(), "same_span");
  return symexpr::generic_rowspace_contains(a.matrix(), b.matrix()) &&
         symexpr::generic_rowspace_contains(b.matrix(), a.matrix());
}

namespace {

Verdict membership_all(const DiracBasis& D, const std::vector<std::pair<std::string, DiracPair>>& probes) {
  FractionFreeEchelon ech(D.matrix());
  for (const auto& [label, p] : probes) {
    auto res = ech.residual(p.row());
    if (!std::all_of(res.begin(), res.end(), [](const Expr& e) { return e.is_zero(); }))
      return Verdict::fail(label + " not in span; residual " + to_string(DiracPair::from_row(D.chart(), res)));
  }
  return Verdict::pass();
}

ChartPtr ensure_tangent(const DiracBasis& D, ChartPtr tc) {
  if (!tc) return lifts::tangent_chart(D.chart());
  if (!tc->is_tangent() || !same_chart(tc->base(), D.chart()))
    throw std::invalid_argument("tangent chart does not lift the basis chart");
  return tc;
}

} // namespace

Verdict check_integrable(const DiracBasis& D) {
  std::vector<std::pair<std::string, DiracPair>> probes;
  for (std::size_t i = 0; i < D.size(); ++i)
    for (std::size_t j = i + 1; j < D.size(); ++j)
      probes.emplace_back("[b" + std::to_string(i + 1) + ", b" + std::to_string(j + 1) + "]",
                          courant_bracket(D[i], D[j]));
  return membership_all(D, probes);
}

DiracBasis tangent_lift(const DiracBasis& D, ChartPtr tc) {
  tc = ensure_tangent(D, std::move(tc));
  std::vector<DiracPair> pairs;
  for (const auto& p : D) pairs.emplace_back(lifts::complete_lift(tc, p.X), lifts::complete_lift(tc, p.alpha));
  for (const auto& p : D) pairs.emplace_back(lifts::vertical_lift(tc, p.X), lifts::vertical_lift(tc, p.alpha));
  return {tc, std::move(pairs)};
}

DiracBasis vertical_pullback(const DiracBasis& D, ChartPtr tc) {
  tc = ensure_tangent(D, std::move(tc));
  const std::size_t n = D.dim();
  std::vector<DiracPair> pairs;
  for (const auto& p : D) pairs.emplace_back(lifts::complete_lift(tc, p.X), lifts::vertical_lift(tc, p.alpha));
  for (std::size_t k = 0; k < n; ++k)
    pairs.emplace_back(TensorField::coordinate_vector(tc, n + k), TensorField(tc, Signature::form(1)));
  return {tc, std::move(pairs)};
}

Verdict check_homogeneous(const DiracBasis& D, const TensorField& Z) {
  std::vector<std::pair<std::string, DiracPair>> probes;
  for (std::size_t i = 0; i < D.size(); ++i)
    probes.emplace_back("homogeneity image of b" + std::to_string(i + 1),
                        DiracPair(lie_bracket(Z, D[i].X) + D[i].X, lie_derivative(Z, D[i].alpha)));
  return membership_all(D, probes);
}

bool is_bivector_graph(const DiracBasis& D) {
  const std::size_t n = D.dim();
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = n + i;
  return symexpr::generic_rank(D.matrix().columns(cols)) == n;
}

// ------------------------------------------------------- pointwise data

PresymplecticData presymplectic_data_at(const DiracBasis& D, const Point& point) {
  const std::size_t n = D.dim();
  const auto ech = symexpr::row_reduce(symexpr::evaluate(D.matrix(), point));
  PresymplecticData out;
  out.point = point;
  std::vector<std::vector<Rational>> xs, as, kernel;
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    auto row = ech.rref.row(r);
    std::vector<Rational> x(row.begin(), row.begin() + static_cast<long>(n));
    std::vector<Rational> a(row.begin() + static_cast<long>(n), row.end());
    if (ech.pivot_cols[r] < n) {
      xs.push_back(std::move(x));
      as.push_back(std::move(a));
    } else {
      kernel.push_back(std::move(a));
    }
  }
  const std::size_t k = xs.size();
  out.A = QMatrix(k, n);
  out.varpi = QMatrix(k, k);
  auto dot = [n](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < n; ++c) out.A(i, c) = xs[i][c];
    for (std::size_t j = 0; j < k; ++j) out.varpi(i, j) = dot(as[i], xs[j]);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (out.varpi(i, j) != -out.varpi(j, i)) out.well_defined = false;
  for (const auto& g : kernel)
    for (const auto& x : xs)
      if (dot(g, x) != 0) out.well_defined = false;
  return out;
}

QMatrix reconstruct_at(const QMatrix& A, const QMatrix& varpi, std::size_t n) {
  const std::size_t k = A.rows();
  if ((k > 0 && A.cols() != n) || varpi.rows() != k || varpi.cols() != k)
    throw std::invalid_argument("reconstruct_at: dimension mismatch");
  // unknowns (c_1..c_k, alpha_1..alpha_n): alpha(A_l) - sum_j c_j varpi(A_j, A_l) = 0
  QMatrix sys(k, k + n);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t j = 0; j < k; ++j) sys(l, j) = -varpi(j, l);
    for (std::size_t i = 0; i < n; ++i) sys(l, k + i) = A(l, i);
  }
  QMatrix out(0, 2 * n);
  for (const auto& sol : symexpr::nullspace(sys)) {
    std::vector<Rational> row(2 * n);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) row[i] += sol[j] * A(j, i);
    for (std::size_t i = 0; i < n; ++i) row[n + i] = sol[k + i];
    out.append_row(row);
  }
  return out;
}

} // namespace tdirac::dirac
