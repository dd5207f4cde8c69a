#include "tdirac/submanifold/submanifold.hpp"

#include <algorithm>

namespace tdirac::submanifold {

using tensorcalc::Chart;
using tensorcalc::Index;
using tensorcalc::Signature;

ChartPtr normal_bundle_chart(const ChartPtr& base, const TubularSplit& split) {
  split.validate(base->dim());
  const std::size_t n = base->dim();
  TubularSplit tm;
  tm.tangent = split.tangent;
  for (std::size_t a : split.normal) tm.tangent.push_back(n + a);
  tm.normal = split.normal;
  for (std::size_t u : split.tangent) tm.normal.push_back(n + u);
  return Chart::with_split(lifts::tangent_chart(base), std::move(tm));
}

namespace {

struct AffineInW {
  Expr constant;
  std::vector<Expr> linear; // coefficient of w^h
};

AffineInW split_affine(const Expr& e, const std::vector<symexpr::Var>& ws) {
  symexpr::Substitution w0;
  for (const auto& w : ws) w0.emplace(w, Expr(0));
  AffineInW out{symexpr::substitute(e, w0), {}};
  Expr rebuilt = out.constant;
  for (const auto& w : ws) {
    out.linear.push_back(symexpr::substitute(symexpr::differentiate(e, w), w0));
    rebuilt += out.linear.back() * Expr::variable(w);
  }
  if (!(rebuilt == e)) throw std::logic_error("lifted coefficient is not affine in the normal fiber coordinates");
  return out;
}

} // namespace

LinearSystemPair lifted_systems(const DiracBasis& lifted, const TubularSplit& base_split) {
  const ChartPtr& tm = lifted.chart();
  if (!tm->is_tangent()) throw std::invalid_argument("lifted_systems: expects a basis on a tangent chart");
  const std::size_t n = tm->base_dim();
  base_split.validate(n);
  const auto& U = base_split.tangent;
  const auto& A = base_split.normal;

  // restrict to nu N: y = 0, v = 0; w stays free
  symexpr::Substitution on_nu;
  for (std::size_t a : A) on_nu.emplace(tm->var(a), Expr(0));
  for (std::size_t u : U) on_nu.emplace(tm->fiber(u), Expr(0));
  std::vector<symexpr::Var> ws;
  for (std::size_t a : A) ws.push_back(tm->fiber(a));

  const std::size_t rows = U.size() + A.size() + U.size() * A.size();
  LinearSystemPair sys{PolyMatrix(rows, lifted.size()), PolyMatrix(rows, lifted.size())};
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    const auto row = lifted[i].row();
    auto coeff = [&](std::size_t c) { return split_affine(symexpr::substitute(row[c], on_nu), ws); };
    auto w_free = [&](std::size_t c) {
      AffineInW a = coeff(c);
      if (!std::all_of(a.linear.begin(), a.linear.end(), [](const Expr& e) { return e.is_zero(); }))
        throw std::logic_error("lifted coefficient unexpectedly depends on the normal fiber coordinates");
      return a.constant;
    };
    const std::size_t form = 2 * n; // offset of the form part in a row
    for (std::size_t s = 0; s < U.size(); ++s) {
      const AffineInW dx = coeff(form + U[s]);   // dx^s
      const AffineInW dv = coeff(n + U[s]);      // d/dv^s
      sys.ann(s, i) = dx.constant;
      sys.tg(s, i) = dv.constant;
      for (std::size_t h = 0; h < A.size(); ++h) {
        const std::size_t r = U.size() + A.size() + s * A.size() + h;
        sys.ann(r, i) = dx.linear[h];
        sys.tg(r, i) = dv.linear[h];
      }
    }
    for (std::size_t h = 0; h < A.size(); ++h) {
      sys.ann(U.size() + h, i) = w_free(form + n + A[h]); // dw^h
      sys.tg(U.size() + h, i) = w_free(A[h]);             // d/dy^h
    }
  }
  return sys;
}

LinearSystemPair nu_systems(const SegmentedBasis& basis) {
  const ChartPtr tm = normal_bundle_chart(basis.chart(), basis.split());
  return lifted_systems(dirac::tangent_lift(basis.ordered(), tm), basis.split());
}

namespace {

DiracBasis pullback_basis(const SegmentedBasis& basis, const ChartPtr& tm) {
  const std::size_t n = basis.chart()->dim();
  const DiracBasis lifted = dirac::vertical_pullback(basis.ordered(), tm);
  std::vector<DiracPair> pairs(lifted.pairs().begin(), lifted.pairs().begin() + static_cast<long>(n));
  // vertical pairs ordered d/dv^u then d/dw^a
  for (std::size_t u : basis.split().tangent) pairs.push_back(lifted[n + u]);
  for (std::size_t a : basis.split().normal) pairs.push_back(lifted[n + a]);
  return {tm, std::move(pairs)};
}

} // namespace

LinearSystemPair pullback_systems(const SegmentedBasis& basis) {
  const ChartPtr tm = normal_bundle_chart(basis.chart(), basis.split());
  return lifted_systems(pullback_basis(basis, tm), basis.split());
}

// --------------------------------------------------------- certificates

bool Certificate::vanishes() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.is_zero(); });
}

std::string Certificate::render(const ChartPtr& chart) const {
  std::string s;
  for (const auto& [label, value] : entries) {
    if (!s.empty()) s += ", ";
    s += label + " = " + symexpr::render(value, chart->vars());
  }
  return s.empty() ? "(none)" : s;
}

bool XuResult::consistent() const {
  const bool cert = mixed.vanishes() && normal_derivatives.vanishes();
  return totally_dirac.holds == lifted.holds && totally_dirac.holds == cert;
}

namespace {

/// Mixed components T(u, a) and normal derivatives dT(u, s)/dy^h (u < s) on N.
void certificates(const TensorField& T, const TubularSplit& split, const char* mixed_name, const char* main_name,
                  XuResult& out) {
  const auto& chart = T.chart();
  const auto y0 = restrict_to_N(chart, split);
  const auto& names = chart->names();
  for (std::size_t u : split.tangent)
    for (std::size_t a : split.normal)
      out.mixed.entries.emplace_back(std::string(mixed_name) + "[" + names[u] + "," + names[a] + "]",
                                     symexpr::substitute(T.component(Index{u, a}), y0));
  for (std::size_t i = 0; i < split.tangent.size(); ++i)
    for (std::size_t j = i + 1; j < split.tangent.size(); ++j)
      for (std::size_t h : split.normal) {
        const std::size_t u = split.tangent[i], s = split.tangent[j];
        out.normal_derivatives.entries.emplace_back(
            "d" + std::string(main_name) + "[" + names[u] + "," + names[s] + "]/d" + names[h],
            symexpr::substitute(symexpr::differentiate(T.component(Index{u, s}), chart->var(h)), y0));
      }
}

} // namespace

XuResult xu_test(const TensorField& P, const TubularSplit& split, const CheckContext& ctx) {
  const DiracBasis D = dirac::from_poisson(P);
  XuResult r;
  r.totally_dirac = check_totally_dirac(D, split, ctx);
  r.lifted = check_nu_coisotropic(nu_systems(SegmentedBasis::positional(D, split)), P.chart(), split, ctx,
                                  Mode::Coisotropic);
  certificates(P, split, "Q", "P", r);
  return r;
}

XuResult xu_test_presymplectic(const TensorField& sigma, const TubularSplit& split, const CheckContext& ctx) {
  const DiracBasis D = dirac::from_presymplectic(sigma);
  XuResult r;
  r.totally_dirac = check_totally_dirac(D, split, ctx);
  r.lifted = check_nu_coisotropic(nu_systems(SegmentedBasis::positional(D, split)), sigma.chart(), split, ctx,
                                  Mode::Isotropic);
  certificates(sigma, split, "phi", "sigma", r);
  return r;
}

DefectReport defect_of_natural_normal_bundle(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  DefectReport report;
  report.codim = split.normal.size();
  report.dim = D.dim();
  if (Verdict c = check_cosymplectic(D, split, ctx).verdict; !c) {
    report.verdict = Verdict::fail("N is not cosymplectic: " + c.certificate);
    return report;
  }
  const SegmentedBasis seg = adapt_basis(D, split, ctx);
  const ChartPtr tm = normal_bundle_chart(D.chart(), split);
  const TubularSplit& tm_split = *tm->split();
  const DiracBasis T = dirac::tangent_lift(seg.ordered(), tm);
  const std::size_t n = D.dim(), k = seg.tangent_dim();

  std::vector<symexpr::Var> pinned;
  for (std::size_t i : tm_split.normal) pinned.push_back(tm->var(i));
  const PolyMatrix m = T.matrix();
  for (const Point& p : ctx.points(tm->vars(), pinned)) {
    const std::size_t d = cosymplecticity_default(T, tm_split, p, ctx);
    report.defaults.emplace_back(p, d);
    if (report.verdict && (d < report.codim || d > report.dim))
      report.verdict = Verdict::fail("d = " + std::to_string(d) + " outside [" + std::to_string(report.codim) + ", " +
                                     std::to_string(report.dim) + "] at " + dirac::describe(p));
    // (C_a^V, tau_a^V): vector part along T(nu N), form part in its annihilator
    const QMatrix here = symexpr::evaluate(m, p);
    for (std::size_t a = 0; a < seg.codim() && report.verdict; ++a) {
      const std::size_t r = n + k + a;
      bool inside = true;
      for (std::size_t c : tm_split.normal) inside = inside && here(r, c) == 0;
      for (std::size_t c : tm_split.tangent) inside = inside && here(r, 2 * n + c) == 0;
      if (!inside)
        report.verdict = Verdict::fail("witness C_" + std::to_string(a + 1) + "^V leaves the intersection at " +
                                       dirac::describe(p));
    }
  }
  return report;
}

Verdict vertical_pullback_nu_check(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx) {
  const LinearSystemPair sys = pullback_systems(SegmentedBasis::positional(D, split));
  for (const Point& p : points_on_N(D.chart(), split, ctx)) {
    const QMatrix ann = symexpr::evaluate(sys.ann, p), tg = symexpr::evaluate(sys.tg, p);
    if (ctx.contains("vertical pullback coisotropic", ann, tg))
      return Verdict::fail("nu N coisotropic for the vertical pullback at " + dirac::describe(p));
  }
  return Verdict::pass();
}

} // namespace tdirac::submanifold
