#include "tdirac/submanifold/submanifold.hpp"

#include <algorithm>

namespace tdirac::submanifold {

using symexpr::FractionFreeEchelon;
using tensorcalc::Chart;
using tensorcalc::Signature;

const TubularSplit& split_of(const ChartPtr& chart) {
  if (!chart->split()) throw std::invalid_argument("chart has no tubular split");
  return *chart->split();
}

symexpr::Substitution restrict_to_N(const ChartPtr& chart, const TubularSplit& split) {
  symexpr::Substitution s;
  for (std::size_t a : split.normal) s.emplace(chart->var(a), Expr(0));
  return s;
}

std::vector<Point> points_on_N(const ChartPtr& chart, const TubularSplit& split, const CheckContext& ctx) {
  std::vector<symexpr::Var> ys;
  for (std::size_t a : split.normal) ys.push_back(chart->var(a));
  return ctx.points(chart->vars(), ys);
}

// -------------------------------------------------------- SegmentedBasis

SegmentedBasis::SegmentedBasis(DiracBasis basis, TubularSplit split, std::vector<std::size_t> b_pairs,
                               std::vector<std::size_t> c_pairs)
    : basis_(std::move(basis)), split_(std::move(split)), b_pairs_(std::move(b_pairs)), c_pairs_(std::move(c_pairs)) {
  split_.validate(basis_.dim());
  if (b_pairs_.size() != split_.tangent.size() || c_pairs_.size() != split_.normal.size())
    throw std::invalid_argument("SegmentedBasis: segment sizes do not match the split");
  std::vector<std::size_t> all = b_pairs_;
  all.insert(all.end(), c_pairs_.begin(), c_pairs_.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] != i || i >= basis_.size()) throw std::invalid_argument("SegmentedBasis: segments must partition the pairs");
}

SegmentedBasis SegmentedBasis::positional(const DiracBasis& basis, const TubularSplit& split) {
  return {basis, split, split.tangent, split.normal};
}

const Expr& SegmentedBasis::b(std::size_t u, std::size_t s) const { return B(u).X.coefficient(split_.tangent.at(s)); }
const Expr& SegmentedBasis::bp(std::size_t u, std::size_t h) const { return B(u).X.coefficient(split_.normal.at(h)); }
const Expr& SegmentedBasis::c(std::size_t a, std::size_t s) const { return C(a).X.coefficient(split_.tangent.at(s)); }
const Expr& SegmentedBasis::cp(std::size_t a, std::size_t h) const { return C(a).X.coefficient(split_.normal.at(h)); }
const Expr& SegmentedBasis::e(std::size_t u, std::size_t s) const { return B(u).alpha.coefficient(split_.tangent.at(s)); }
const Expr& SegmentedBasis::ep(std::size_t u, std::size_t h) const { return B(u).alpha.coefficient(split_.normal.at(h)); }
const Expr& SegmentedBasis::t(std::size_t a, std::size_t s) const { return C(a).alpha.coefficient(split_.tangent.at(s)); }
const Expr& SegmentedBasis::tp(std::size_t a, std::size_t h) const { return C(a).alpha.coefficient(split_.normal.at(h)); }

DiracBasis SegmentedBasis::ordered() const {
  std::vector<DiracPair> pairs;
  for (std::size_t u = 0; u < tangent_dim(); ++u) pairs.push_back(B(u));
  for (std::size_t a = 0; a < codim(); ++a) pairs.push_back(C(a));
  return {chart(), std::move(pairs)};
}

namespace {

bool vanishes_on_N(const Expr& e, const symexpr::Substitution& y0) { return symexpr::substitute(e, y0).is_zero(); }

std::string coefficient_name(const char* stem, std::size_t i, std::size_t j) {
  return std::string(stem) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

} // namespace

Verdict SegmentedBasis::adapted() const {
  const auto y0 = restrict_to_N(chart(), split_);
  for (std::size_t u = 0; u < tangent_dim(); ++u)
    for (std::size_t h = 0; h < codim(); ++h) {
      if (!vanishes_on_N(bp(u, h), y0)) return Verdict::fail(coefficient_name("b'", u, h) + " != 0 on N");
      if (!vanishes_on_N(ep(u, h), y0)) return Verdict::fail(coefficient_name("e'", u, h) + " != 0 on N");
    }
  for (std::size_t a = 0; a < codim(); ++a)
    for (std::size_t s = 0; s < tangent_dim(); ++s) {
      if (!vanishes_on_N(c(a, s), y0)) return Verdict::fail(coefficient_name("c", a, s) + " != 0 on N");
      if (!vanishes_on_N(t(a, s), y0)) return Verdict::fail(coefficient_name("t", a, s) + " != 0 on N");
    }
  return Verdict::pass();
}

Verdict SegmentedBasis::isotropic() const {
  const DiracBasis o = ordered();
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = i; j < o.size(); ++j)
      if (!dirac::pairing_g(o[i], o[j]).is_zero())
        return Verdict::fail("pairs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not isotropic");
  return Verdict::pass();
}

// ---------------------------------------------------- proper normalization

namespace {

std::vector<std::size_t> columns_of(const TubularSplit& split, std::size_t n, bool x_tangent, bool x_normal,
                                    bool a_tangent, bool a_normal) {
  std::vector<std::size_t> cols;
  if (x_tangent) cols.insert(cols.end(), split.tangent.begin(), split.tangent.end());
  if (x_normal) cols.insert(cols.end(), split.normal.begin(), split.normal.end());
  if (a_tangent)
    for (std::size_t s : split.tangent) cols.push_back(n + s);
  if (a_normal)
    for (std::size_t h : split.normal) cols.push_back(n + h);
  return cols;
}

} // namespace

Verdict check_properly_normalized(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  const std::size_t n = D.dim();
  const PolyMatrix m = D.matrix();
  const auto normal_cols = columns_of(split, n, false, true, false, true);
  for (const Point& p : points_on_N(D.chart(), split, ctx)) {
    const QMatrix here = symexpr::evaluate(m, p);
    QMatrix projected = here;
    for (std::size_t r = 0; r < projected.rows(); ++r)
      for (std::size_t c : normal_cols) projected(r, c) = 0;
    if (ctx.contains("properly normalized", here, projected)) continue;
    for (std::size_t r = 0; r < projected.rows(); ++r) {
      QMatrix one(0, projected.cols());
      one.append_row(projected.row(r));
      if (!symexpr::rowspace_contains(here, one))
        return Verdict::fail("projection of pair " + std::to_string(r + 1) + " leaves D at " + dirac::describe(p));
    }
    return Verdict::fail("projection leaves D at " + dirac::describe(p));
  }
  return Verdict::pass();
}

// ---------------------------------------------------------- adapt_basis

namespace {

std::optional<SegmentedBasis> as_adapted(const DiracBasis& D, const TubularSplit& split) {
  const auto y0 = restrict_to_N(D.chart(), split);
  const std::size_t n = D.dim();
  const auto normal_cols = columns_of(split, n, false, true, false, true);
  const auto tangent_cols = columns_of(split, n, true, false, true, false);
  std::vector<std::size_t> bs, cs;
  for (std::size_t i = 0; i < D.size(); ++i) {
    const auto row = D[i].row();
    auto zero_on = [&](const std::vector<std::size_t>& cols) {
      return std::all_of(cols.begin(), cols.end(), [&](std::size_t c) { return vanishes_on_N(row[c], y0); });
    };
    const bool tangent_type = zero_on(normal_cols), normal_type = zero_on(tangent_cols);
    if (tangent_type && normal_type) throw AdaptationFailed("pair " + std::to_string(i + 1) + " vanishes on N");
    if (tangent_type) bs.push_back(i);
    else if (normal_type) cs.push_back(i);
    else return std::nullopt;
  }
  if (bs.size() != split.tangent.size() || cs.size() != split.normal.size()) return std::nullopt;
  return SegmentedBasis(D, split, bs, cs);
}

std::vector<std::vector<Expr>> left_kernel_on_N(const PolyMatrix& on_N, const std::vector<std::size_t>& cols) {
  FractionFreeEchelon ech(on_N.columns(cols).transposed());
  auto ker = ech.nullspace();
  for (auto& v : ker) v = symexpr::simplify_vector(std::move(v));
  return ker;
}

DiracPair combination(const DiracBasis& D, const std::vector<Expr>& coeffs) {
  DiracPair p = DiracPair::zero(D.chart());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) p += coeffs[i] * D[i];
  return p;
}

} // namespace

SegmentedBasis adapt_basis(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  split.validate(D.dim());
  if (D.size() != D.dim()) throw AdaptationFailed("basis must have n pairs");
  if (auto ready = as_adapted(D, split)) return *ready;

  const std::size_t n = D.dim();
  const PolyMatrix on_N = symexpr::substitute(D.matrix(), restrict_to_N(D.chart(), split));
  const auto kb = left_kernel_on_N(on_N, columns_of(split, n, false, true, false, true));
  const auto kc = left_kernel_on_N(on_N, columns_of(split, n, true, false, true, false));
  if (kb.size() != split.tangent.size() || kc.size() != split.normal.size())
    throw AdaptationFailed("D|_N does not split along TN + T*N and the normal bundle (tangential part of dimension " +
                           std::to_string(kb.size()) + ", normal part " + std::to_string(kc.size()) + ")");
  std::vector<DiracPair> pairs;
  for (const auto& v : kb) pairs.push_back(combination(D, v));
  for (const auto& v : kc) pairs.push_back(combination(D, v));
  std::vector<std::size_t> bs(kb.size()), cs(kc.size());
  for (std::size_t u = 0; u < bs.size(); ++u) bs[u] = u;
  for (std::size_t a = 0; a < cs.size(); ++a) cs[a] = bs.size() + a;
  SegmentedBasis out(DiracBasis(D.chart(), std::move(pairs)), split, bs, cs);
  if (Verdict v = out.adapted(); !v) throw AdaptationFailed("combination is not adapted: " + v.certificate);
  const PolyMatrix m = out.basis().matrix();
  for (const Point& p : points_on_N(D.chart(), split, ctx))
    if (ctx.rank("adapted basis rank", symexpr::evaluate(m, p)) != n)
      throw AdaptationFailed("adapted combination degenerates at " + dirac::describe(p));
  return out;
}

DiracBasis induced_dirac(const SegmentedBasis& adapted) {
  if (Verdict v = adapted.adapted(); !v) throw NotAdapted(v.certificate);
  const auto& split = adapted.split();
  std::vector<std::string> names;
  for (std::size_t s : split.tangent) names.push_back(adapted.chart()->names()[s]);
  const ChartPtr nc = Chart::make(names);
  const auto y0 = restrict_to_N(adapted.chart(), split);
  std::vector<DiracPair> pairs;
  for (std::size_t u = 0; u < adapted.tangent_dim(); ++u) {
    std::vector<Expr> X, a;
    for (std::size_t s = 0; s < adapted.tangent_dim(); ++s) {
      X.push_back(symexpr::substitute(adapted.b(u, s), y0));
      a.push_back(symexpr::substitute(adapted.e(u, s), y0));
    }
    pairs.emplace_back(TensorField::vector_field(nc, std::move(X)), TensorField::one_form(nc, std::move(a)));
  }
  return {nc, std::move(pairs)};
}

// ------------------------------------------------ second fundamental form

bool SecondFundamentalForm::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Expr& e) { return e.is_zero(); });
}

bool SecondFundamentalForm::skew() const {
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = 0; v < k; ++v)
      for (std::size_t a = 0; a < m; ++a)
        if (!(at(u, v, a) + at(v, u, a)).is_zero()) return false;
  return true;
}

SecondFundamentalForm second_fundamental_form(const SegmentedBasis& adapted) {
  if (Verdict v = adapted.adapted(); !v) throw NotAdapted(v.certificate);
  const auto& chart = adapted.chart();
  const auto& split = adapted.split();
  const auto y0 = restrict_to_N(chart, split);
  SecondFundamentalForm B;
  B.k = adapted.tangent_dim();
  B.m = adapted.codim();
  B.values.resize(B.k * B.k * B.m);
  for (std::size_t u = 0; u < B.k; ++u)
    for (std::size_t v = 0; v < B.k; ++v)
      for (std::size_t a = 0; a < B.m; ++a) {
        const symexpr::Var y = chart->var(split.normal[a]);
        Expr sum;
        for (std::size_t s = 0; s < B.k; ++s)
          sum += adapted.b(v, s) * symexpr::differentiate(adapted.e(u, s), y) +
                 adapted.e(v, s) * symexpr::differentiate(adapted.b(u, s), y);
        B.values[(u * B.k + v) * B.m + a] = symexpr::substitute(sum, y0);
      }
  return B;
}

} // namespace tdirac::submanifold
