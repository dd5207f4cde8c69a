#include "tdirac/submanifold/submanifold.hpp"

namespace tdirac::submanifold {

using symexpr::QVector;
using symexpr::Rational;

namespace {

std::vector<std::size_t> shifted(const std::vector<std::size_t>& idx, std::size_t by) {
  std::vector<std::size_t> out;
  for (std::size_t i : idx) out.push_back(i + by);
  return out;
}

/// Unit rows e_i, i in `which`, of R^n.
QMatrix unit_rows(const std::vector<std::size_t>& which, std::size_t n) {
  QMatrix m(which.size(), n);
  for (std::size_t r = 0; r < which.size(); ++r) m(r, which[r]) = 1;
  return m;
}

std::string render_vector(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + symexpr::to_string(v[i]);
  return s + ")";
}

} // namespace

QMatrix pseudo_normal_at(const DiracBasis& D, const TubularSplit& split, const Point& x, const CheckContext& ctx) {
  const std::size_t n = D.dim();
  const QMatrix m = symexpr::evaluate(D.matrix(), x);
  std::vector<std::size_t> xcols(n);
  for (std::size_t i = 0; i < n; ++i) xcols[i] = i;
  // combinations whose form part has no dx^u component
  QMatrix H(0, n);
  for (const QVector& lambda : symexpr::left_nullspace(m.columns(shifted(split.tangent, n)))) {
    QVector z(n);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) z[c] += lambda[r] * m(r, c);
    H.append_row(z);
  }
  H = symexpr::row_basis(H);
  ctx.rank("pseudo-normal dimension", H);
  return H;
}

std::size_t cosymplecticity_default(const DiracBasis& D, const TubularSplit& split, const Point& x,
                                    const CheckContext& ctx) {
  const std::size_t n = D.dim();
  const QMatrix m = symexpr::evaluate(D.matrix(), x);
  std::vector<std::size_t> cols = split.normal;
  for (std::size_t s : split.tangent) cols.push_back(n + s);
  return ctx.rank("cosymplecticity default: D", m) - ctx.rank("cosymplecticity default: constrained columns", m.columns(cols));
}

CosymplecticReport check_cosymplectic(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  CosymplecticReport report;
  const std::size_t n = D.dim();
  const QMatrix nu = unit_rows(split.normal, n);
  for (const Point& p : points_on_N(D.chart(), split, ctx)) {
    const std::size_t d = cosymplecticity_default(D, split, p, ctx);
    report.defaults.emplace_back(p, d);
    if (d != 0 && report.verdict.holds)
      report.verdict = Verdict::fail("d = " + std::to_string(d) + " at " + dirac::describe(p));
    if (!report.verdict.holds) continue;
    const QMatrix H = pseudo_normal_at(D, split, p, ctx);
    if (!ctx.contains("pseudo-normal within nu N", nu, H) || !ctx.contains("nu N within pseudo-normal", H, nu))
      report.verdict = Verdict::fail("pseudo-normal field differs from span{d/dy} at " + dirac::describe(p));
  }
  if (!report.verdict.holds) return report;

  // Along a cosymplectic N the adapted blocks e(x,0) and c'(x,0) are invertible,
  // so the basis normalizes to e = identity, c' = identity.
  try {
    const SegmentedBasis seg = adapt_basis(D, split, ctx);
    const std::size_t k = seg.tangent_dim(), mdim = seg.codim();
    const auto y0 = restrict_to_N(D.chart(), split);
    symexpr::PolyMatrix e(k, k), cp(mdim, mdim);
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t s = 0; s < k; ++s) e(u, s) = symexpr::substitute(seg.e(u, s), y0);
    for (std::size_t a = 0; a < mdim; ++a)
      for (std::size_t h = 0; h < mdim; ++h) cp(a, h) = symexpr::substitute(seg.cp(a, h), y0);
    for (const Point& p : points_on_N(D.chart(), split, ctx)) {
      if (ctx.rank("tangential form block", symexpr::evaluate(e, p)) != k)
        return {Verdict::fail("tangential form block singular at " + dirac::describe(p)), report.defaults};
      if (ctx.rank("normal vector block", symexpr::evaluate(cp, p)) != mdim)
        return {Verdict::fail("normal vector block singular at " + dirac::describe(p)), report.defaults};
    }
  } catch (const AdaptationFailed& err) {
    report.verdict = Verdict::fail(std::string("no adapted basis: ") + err.what());
  }
  return report;
}

Verdict check_totally_dirac(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  if (Verdict v = check_properly_normalized(D, split, ctx); !v) return Verdict::fail("not properly normalized: " + v.certificate);
  try {
    const SecondFundamentalForm B = second_fundamental_form(adapt_basis(D, split, ctx));
    for (std::size_t u = 0; u < B.k; ++u)
      for (std::size_t v = 0; v < B.k; ++v)
        for (std::size_t a = 0; a < B.m; ++a)
          if (!B.at(u, v, a).is_zero())
            return Verdict::fail("B[" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "," +
                                 std::to_string(a + 1) + "] = " + symexpr::render(B.at(u, v, a), D.chart()->vars()));
  } catch (const AdaptationFailed& err) {
    return Verdict::fail(std::string("no adapted basis: ") + err.what());
  }
  return Verdict::pass();
}

const char* to_string(Mode m) { return m == Mode::Coisotropic ? "coisotropic" : "isotropic"; }

namespace {

/// Whether sol(A) is within sol(B); on failure returns a solution of A violating B.
std::optional<QVector> implication_witness(const QMatrix& A, const QMatrix& B) {
  for (const QVector& x : symexpr::nullspace(A)) {
    for (std::size_t r = 0; r < B.rows(); ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < B.cols(); ++c) s += B(r, c) * x[c];
      if (s != 0) return x;
    }
  }
  return std::nullopt;
}

} // namespace

Verdict check_coisotropic(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx, Mode mode) {
  const std::size_t n = D.dim();
  const symexpr::PolyMatrix m = D.matrix();
  for (const Point& p : points_on_N(D.chart(), split, ctx)) {
    const QMatrix here = symexpr::evaluate(m, p);
    // unknowns: coefficients of the basis pairs
    const QMatrix form_on_TN = here.columns(shifted(split.tangent, n)).transposed();
    const QMatrix vector_normal = here.columns(split.normal).transposed();
    const QMatrix& premise = mode == Mode::Coisotropic ? form_on_TN : vector_normal;
    const QMatrix& conclusion = mode == Mode::Coisotropic ? vector_normal : form_on_TN;
    if (ctx.contains(std::string("submanifold ") + to_string(mode), premise, conclusion)) continue;
    const auto w = implication_witness(premise, conclusion);
    return Verdict::fail(std::string("not ") + to_string(mode) + " at " + dirac::describe(p) +
                         (w ? "; combination " + render_vector(*w) : std::string()));
  }
  return Verdict::pass();
}

Verdict check_nu_coisotropic(const LinearSystemPair& systems, const ChartPtr& chart, const TubularSplit& split,
                             const CheckContext& ctx, Mode mode) {
  for (const Point& p : points_on_N(chart, split, ctx)) {
    const QMatrix ann = symexpr::evaluate(systems.ann, p), tg = symexpr::evaluate(systems.tg, p);
    const QMatrix& premise = mode == Mode::Coisotropic ? ann : tg;
    const QMatrix& conclusion = mode == Mode::Coisotropic ? tg : ann;
    if (ctx.contains(std::string("normal bundle ") + to_string(mode), premise, conclusion)) continue;
    const auto w = implication_witness(premise, conclusion);
    return Verdict::fail(std::string("nu N not ") + to_string(mode) + " at " + dirac::describe(p) +
                         (w ? "; (lambda, nu, mu, xi) = " + render_vector(*w) : std::string()));
  }
  return Verdict::pass();
}

ClassificationReport classify(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  ClassificationReport r;
  r.properly_normalized = check_properly_normalized(D, split, ctx);
  r.cosymplectic = check_cosymplectic(D, split, ctx);
  r.totally_dirac = check_totally_dirac(D, split, ctx);
  r.coisotropic = check_coisotropic(D, split, ctx, Mode::Coisotropic);
  r.isotropic = check_coisotropic(D, split, ctx, Mode::Isotropic);
  if (r.properly_normalized) {
    try {
      r.second_fundamental_form = second_fundamental_form(adapt_basis(D, split, ctx));
    } catch (const AdaptationFailed&) {
    }
  }
  return r;
}

} // namespace tdirac::submanifold
