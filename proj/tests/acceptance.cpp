// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Every pointwise rank and containment decision made
// along the way is replayed by the numeric oracle (criterion 12).

#include "instances.hpp"

#include "tdirac/harness/numeric.hpp"
#include "tdirac/submanifold/submanifold.hpp"
#include "tdirac/symexpr/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

using namespace tdirac;
using namespace tdirac::testing;
using namespace tdirac::tensorcalc;
using dirac::CheckContext;
using harness::DerivativeAudit;
using symexpr::NumericPoint;
using symexpr::Point;
using symexpr::Var;
namespace sm = tdirac::submanifold;

namespace {

constexpr double kTol = 1e-9;
constexpr double kStep = 1e-5;
constexpr double kFdTol = 1e-6;

harness::NumericOracle oracle(kTol);
DerivativeAudit audit;

CheckContext context() {
  CheckContext ctx;
  ctx.sink = &oracle;
  return ctx;
}

/// Collects the first failure; later failures only bump the count.
struct Outcome {
  bool ok = true;
  std::size_t failures = 0;
  std::string first;
  std::string summary;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ++failures;
    if (ok) first = what;
    ok = false;
  }
};

std::vector<NumericPoint> numeric_points(const ChartPtr& chart, std::uint64_t seed, std::span<const Var> zeroed = {}) {
  std::vector<NumericPoint> out;
  for (const Point& p : symexpr::sample_points(chart->vars(), 25, seed, zeroed)) out.push_back(harness::to_numeric(p));
  return out;
}

void audit_field(const TensorField& t, const ChartPtr& tm) {
  harness::audit_partials(audit, t, numeric_points(t.chart(), 1), kStep);
  if (tm) harness::audit_complete_lifts(audit, tm, t, numeric_points(tm, 2), kStep);
}

void audit_basis(const dirac::DiracBasis& D) {
  const ChartPtr tm = lifts::tangent_chart(D.chart());
  for (const auto& p : D) {
    audit_field(p.X, tm);
    audit_field(p.alpha, tm);
  }
}

ChartPtr base_chart(std::size_t n) { return numbered_chart(n); }

std::vector<SubmanifoldInstance> suite_instances() {
  std::vector<SubmanifoldInstance> out{flat_symplectic(), one_plus_y(), presymplectic_plane(true),
                                           presymplectic_plane(false)};
  auto c = split_chart({"x1", "x2", "x3"}, {{0, 1}, {2}});
  out.push_back(poisson_instance("so(3)*, N = {x3 = 0}", so3_bivector(c)));
  PolyGen g(2024);
  std::size_t k = 0;
  for (const auto& P : screened_linear_poisson(g, 25)) out.push_back(poisson_instance("linear Poisson #" + std::to_string(k++), P));
  for (int t = 0; t < 8; ++t) {
    auto cc = t % 2 ? split_chart({"x1", "x2", "y"}, {{0, 1}, {2}}) : split_chart({"x1", "x2", "y1", "y2"}, {{0, 1}, {2, 3}});
    TensorField sigma = random_presymplectic(g, cc, 1);
    if (t % 4 < 2) // drop the mixed part so that some instances are cosymplectic
      for (std::size_t f = 0; f < sigma.size(); ++f)
        if ((sigma.index_at(f)[0] < 2) != (sigma.index_at(f)[1] < 2)) sigma.coefficient(f) = Expr(0);
    if (!exterior_derivative(sigma).is_zero() || sigma.is_zero()) continue;
    out.push_back(presymplectic_instance("presymplectic #" + std::to_string(t), sigma));
  }
  return out;
}

// 1
Outcome lift_identities() {
  Outcome o;
  PolyGen g(101);
  const int instances = 60;
  for (int t = 0; t < instances; ++t) {
    const ChartPtr base = base_chart(2 + static_cast<std::size_t>(t % 2));
    const ChartPtr tm = lifts::tangent_chart(base);
    const TensorField Xf = random_field(g, base, Signature::multivector(1));
    const TensorField Yf = random_field(g, base, Signature::multivector(1));
    const TensorField a = random_field(g, base, Signature::form(1));
    const TensorField phi = random_field(g, base, Signature::form(static_cast<unsigned>(g.coin(0, 2))));
    const Expr f = g.poly(base->vars(), 2);
    const TensorField XC = lifts::complete_lift(tm, Xf), XV = lifts::vertical_lift(tm, Xf);
    const TensorField YC = lifts::complete_lift(tm, Yf), YV = lifts::vertical_lift(tm, Yf);
    const Expr fV = lifts::vertical_lift(tm, f), fC = lifts::complete_lift(tm, f);
    const Expr ldf = lifts::linear_function(tm, exterior_derivative(TensorField::function(base, f)));
    const std::string at = " (instance " + std::to_string(t) + ")";

    o.require(apply(XC, fV) == lifts::vertical_lift(tm, apply(Xf, f)), "X^C f^V" + at);
    o.require(apply(XC, ldf) == lifts::complete_lift(tm, apply(Xf, f)), "X^C l_df" + at);
    o.require(fC == ldf, "f^C = l_df" + at);
    o.require(lifts::complete_lift(tm, Xf + Yf) == XC + YC, "(X+Y)^C" + at);
    o.require(lifts::complete_lift(tm, f * Xf) == fV * XC + ldf * XV, "(fX)^C" + at);
    o.require(contract(lifts::vertical_lift(tm, a), XC) == lifts::vertical_lift(tm, contract(a, Xf)), "a^V(X^C)" + at);
    o.require(lie_bracket(XC, YC) == lifts::complete_lift(tm, lie_bracket(Xf, Yf)), "[X^C,Y^C]" + at);
    o.require(lie_bracket(XV, YC) == lifts::vertical_lift(tm, lie_bracket(Xf, Yf)), "[X^V,Y^C]" + at);
    o.require(lie_bracket(XV, YV).is_zero(), "[X^V,Y^V]" + at);

    const TensorField PC = lifts::complete_lift(tm, phi), PV = lifts::vertical_lift(tm, phi);
    const TensorField L = lie_derivative(Xf, phi);
    o.require(lifts::vertical_lift(tm, L) == lie_derivative(XC, PV), "(L_X phi)^V = L_{X^C} phi^V" + at);
    o.require(lifts::vertical_lift(tm, L) == lie_derivative(XV, PC), "(L_X phi)^V = L_{X^V} phi^C" + at);
    o.require(lifts::complete_lift(tm, L) == lie_derivative(XC, PC), "(L_X phi)^C" + at);
    o.require(lie_derivative(XV, PV).is_zero(), "L_{X^V} phi^V" + at);

    const TensorField E = lifts::euler_field(tm);
    o.require(lie_bracket(E, XC).is_zero(), "[E,X^C]" + at);
    o.require(lie_bracket(E, XV) == -XV, "[E,X^V]" + at);

    o.require(exterior_derivative(PC) == lifts::complete_lift(tm, exterior_derivative(phi)), "d phi^C" + at);

    audit_field(Xf, tm);
    audit_field(a, tm);
    audit_field(phi, tm);
    audit_field(TensorField::function(base, f), tm);
  }
  o.summary = std::to_string(instances) + " instances, 16 identities each";
  return o;
}

// 2
Outcome schouten_compatibility() {
  Outcome o;
  auto c3 = base_chart(3);
  auto c4 = base_chart(4);
  const TensorField so3 = so3_bivector(c3);
  const TensorField flat = wedge(d_(c4, 0), d_(c4, 1)) + wedge(d_(c4, 2), d_(c4, 3));
  for (const TensorField* P : {&so3, &flat}) {
    const auto tm = lifts::tangent_chart(P->chart());
    const TensorField PC = lifts::complete_lift(tm, *P);
    o.require(schouten_bracket(*P, *P).is_zero(), "[P,P] != 0");
    o.require(schouten_bracket(PC, PC).is_zero(), "[P^C,P^C] != 0");
  }
  PolyGen g(102);
  const int pairs = 25;
  for (int t = 0; t < pairs; ++t) {
    const ChartPtr base = base_chart(2 + static_cast<std::size_t>(t % 2));
    const ChartPtr tm = lifts::tangent_chart(base);
    const TensorField P = random_field(g, base, Signature::multivector(2));
    const TensorField Q = random_field(g, base, Signature::multivector(2));
    o.require(schouten_bracket(lifts::complete_lift(tm, P), lifts::complete_lift(tm, Q)) ==
                  lifts::complete_lift(tm, schouten_bracket(P, Q)),
              "[P^C,Q^C] != [P,Q]^C on pair " + std::to_string(t));
    audit_field(P, tm);
  }
  o.summary = "so(3)* and flat symplectic, " + std::to_string(pairs) + " random pairs";
  return o;
}

// 3
Outcome tangent_dirac(std::vector<dirac::DiracBasis>& integrable) {
  Outcome o;
  PolyGen g(103);
  std::size_t used = 0;
  for (int t = 0; used < 12 && t < 100; ++t) {
    const ChartPtr base = base_chart(2 + static_cast<std::size_t>(t % 2));
    const dirac::DiracBasis D = random_dirac(g, base);
    if (!dirac::check_almost_dirac(D, context()) || !dirac::check_integrable(D)) continue;
    ++used;
    integrable.push_back(D);
    const dirac::DiracBasis T = dirac::tangent_lift(D);
    const std::size_t n = D.size();
    const std::string at = " (instance " + std::to_string(t) + ")";
    o.require(T.size() == 2 * base->dim(), "basis size" + at);
    o.require(dirac::check_almost_dirac(T, context()).holds, "tangent lift not almost Dirac" + at);
    o.require(dirac::check_integrable(T).holds, "tangent lift not integrable" + at);
    const ChartPtr tm = T.chart();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const dirac::DiracPair b = dirac::courant_bracket(D[i], D[j]);
        const dirac::DiracPair bC(lifts::complete_lift(tm, b.X), lifts::complete_lift(tm, b.alpha));
        const dirac::DiracPair bV(lifts::vertical_lift(tm, b.X), lifts::vertical_lift(tm, b.alpha));
        o.require(dirac::courant_bracket(T[i], T[j]) == bC, "[C,C] bracket" + at);
        o.require(dirac::courant_bracket(T[i], T[n + j]) == bV, "[C,V] bracket" + at);
        o.require(dirac::courant_bracket(T[n + i], T[n + j]).is_zero(), "[V,V] bracket" + at);
      }
    audit_basis(D);
  }
  o.require(used >= 10, "fewer than 10 integrable instances");
  o.summary = std::to_string(used) + " integrable bases";
  return o;
}

// 4
Outcome graph_agreement() {
  Outcome o;
  auto c3 = base_chart(3);
  auto c4 = base_chart(4);
  const std::vector<std::pair<std::string, TensorField>> poisson{
      {"so(3)*", so3_bivector(c3)}, {"flat symplectic", wedge(d_(c4, 0), d_(c4, 1)) + wedge(d_(c4, 2), d_(c4, 3))}};
  for (const auto& [name, P] : poisson) {
    const dirac::DiracBasis T = dirac::tangent_lift(dirac::from_poisson(P));
    const dirac::DiracBasis G = dirac::from_poisson(lifts::complete_lift(T.chart(), P));
    for (const auto& p : G) o.require(dirac::span_contains(T, p), name + ": graph of P^C not inside");
    for (const auto& p : T) o.require(dirac::span_contains(G, p), name + ": tangent lift not inside graph of P^C");
  }
  const auto plane = presymplectic_plane(true), mixed = presymplectic_plane(false);
  for (const auto* inst : {&plane, &mixed}) {
    const TensorField& sigma = *inst->presymplectic;
    const dirac::DiracBasis T = dirac::tangent_lift(dirac::from_presymplectic(sigma));
    const dirac::DiracBasis G = dirac::from_presymplectic(lifts::complete_lift(T.chart(), sigma));
    for (const auto& p : G) o.require(dirac::span_contains(T, p), inst->name + ": graph of sigma^C not inside");
    for (const auto& p : T) o.require(dirac::span_contains(G, p), inst->name + ": tangent lift not inside graph of sigma^C");
  }
  o.summary = "so(3)*, flat symplectic, dx1^dx2, dx1^dy";
  return o;
}

// 5 and 6
Outcome homogeneity(const std::vector<dirac::DiracBasis>& all) {
  Outcome o;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const dirac::DiracBasis T = dirac::tangent_lift(all[i]);
    o.require(dirac::check_homogeneous(T, lifts::euler_field(T.chart())).holds, "instance " + std::to_string(i));
  }
  o.summary = std::to_string(all.size()) + " integrable instances";
  return o;
}

Outcome s_invariance(const std::vector<dirac::DiracBasis>& all) {
  Outcome o;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const dirac::DiracBasis T = dirac::tangent_lift(all[i]);
    const auto S = lifts::tangent_structure(T.chart());
    for (const auto& p : T) {
      o.require(dirac::span_contains(T, dirac::DiracPair(S.apply(p.X), S.pull(p.alpha))), "instance " + std::to_string(i));
      ++pairs;
    }
  }
  o.summary = std::to_string(pairs) + " lifted pairs over " + std::to_string(all.size()) + " instances";
  return o;
}

/// Mixed values T(u,a)|_N and normal derivatives dT(u,s)/dy^h|_N recomputed
/// in floating point (central differences in y) and compared with the exact
/// certificates at sampled points of N.
void numeric_certificate_check(Outcome& o, const TensorField& T, const sm::XuResult& r, const TubularSplit& split,
                               const std::string& name) {
  const auto& chart = T.chart();
  std::vector<Var> normal;
  for (std::size_t a : split.normal) normal.push_back(chart->var(a));
  std::size_t m = 0, d = 0;
  for (const NumericPoint& p : numeric_points(chart, 3, normal)) {
    m = d = 0;
    for (std::size_t u : split.tangent)
      for (std::size_t a : split.normal) {
        const double exact = symexpr::evaluate_numeric(r.mixed.entries.at(m++).second, p);
        o.require(std::abs(harness::numeric_eval(T, p).at(std::vector<std::size_t>{u, a}) * (u < a ? 1 : -1) - exact) < kFdTol,
                  name + ": mixed certificate");
      }
    for (std::size_t i = 0; i < split.tangent.size(); ++i)
      for (std::size_t j = i + 1; j < split.tangent.size(); ++j)
        for (std::size_t h : split.normal) {
          const std::vector<std::size_t> idx{split.tangent[i], split.tangent[j]};
          NumericPoint plus = p, minus = p;
          plus[chart->var(h)] += kStep;
          minus[chart->var(h)] -= kStep;
          const double sign = idx[0] < idx[1] ? 1 : -1;
          const double fd = sign * (harness::numeric_eval(T, plus).at(idx) - harness::numeric_eval(T, minus).at(idx)) / (2 * kStep);
          const double exact = symexpr::evaluate_numeric(r.normal_derivatives.entries.at(d++).second, p);
          o.require(std::abs(fd - exact) / std::max(1.0, std::abs(exact)) < kFdTol, name + ": normal-derivative certificate");
        }
  }
  o.require(m == r.mixed.entries.size() && d == r.normal_derivatives.entries.size(), name + ": certificate size");
}

// 7
Outcome xu_poisson() {
  Outcome o;
  auto run = [&](const TensorField& P, const std::string& name, std::optional<bool> expected) {
    const auto& split = *P.chart()->split();
    const dirac::DiracBasis D = dirac::from_poisson(P);
    const bool td = sm::check_totally_dirac(D, split, context()).holds;
    const bool nu = sm::check_nu_coisotropic(sm::nu_systems(sm::SegmentedBasis::positional(D, split)), P.chart(), split,
                                             context(), sm::Mode::Coisotropic)
                        .holds;
    o.require(td == nu, name + ": verdicts differ");
    if (expected) o.require(td == *expected, name + ": unexpected verdict");
    const sm::XuResult r = sm::xu_test(P, split, context());
    o.require(r.consistent(), name + ": certificates disagree with the verdicts");
    numeric_certificate_check(o, P, r, split, name);
    audit_field(P, nullptr);
    return r;
  };
  run(*flat_symplectic().poisson, "flat symplectic", true);
  const sm::XuResult neg = run(*one_plus_y().poisson, "(1+y) plane", false);
  o.require(neg.mixed.vanishes(), "(1+y): Q should vanish on N");
  o.require(neg.normal_derivatives.entries.size() == 1 && neg.normal_derivatives.entries[0].second == Expr(1),
            "(1+y): dP/dy should be exactly 1");
  PolyGen g(107);
  std::size_t pos = 0, count = 0;
  for (const auto& P : screened_linear_poisson(g, 25)) {
    pos += run(P, "random #" + std::to_string(count), std::nullopt).totally_dirac.holds;
    ++count;
  }
  o.require(count >= 20, "fewer than 20 random instances");
  o.summary = "2 named + " + std::to_string(count) + " random instances (" + std::to_string(pos) + " totally Dirac)";
  return o;
}

// 8
Outcome xu_presymplectic() {
  Outcome o;
  for (bool positive : {true, false}) {
    const auto inst = presymplectic_plane(positive);
    const TensorField& sigma = *inst.presymplectic;
    const dirac::DiracBasis D = dirac::from_presymplectic(sigma);
    const bool td = sm::check_totally_dirac(D, inst.split, context()).holds;
    const bool nu = sm::check_nu_coisotropic(sm::nu_systems(sm::SegmentedBasis::positional(D, inst.split)), sigma.chart(),
                                             inst.split, context(), sm::Mode::Isotropic)
                        .holds;
    o.require(td == nu, inst.name + ": verdicts differ");
    o.require(td == positive, inst.name + ": unexpected verdict");
    const sm::XuResult r = sm::xu_test_presymplectic(sigma, inst.split, context());
    o.require(r.consistent(), inst.name + ": certificates disagree with the verdicts");
    numeric_certificate_check(o, sigma, r, inst.split, inst.name);
  }
  o.summary = "dx1^dx2 (totally Dirac, isotropic) and dx1^dy (neither)";
  return o;
}

// 9
Outcome pullback_never_coisotropic(const std::vector<SubmanifoldInstance>& suite) {
  Outcome o;
  for (const auto& inst : suite) o.require(sm::vertical_pullback_nu_check(inst.D, inst.split, context()).holds, inst.name);
  o.require(suite.size() >= 20, "fewer than 20 instances");
  o.summary = std::to_string(suite.size()) + " instances, " + std::to_string(o.failures) + " counterexamples";
  return o;
}

// 10 and 11
Outcome defect_bounds(const std::vector<SubmanifoldInstance>& suite, std::size_t& cosymplectic) {
  Outcome o;
  cosymplectic = 0;
  for (const auto& inst : suite) {
    if (!sm::check_cosymplectic(inst.D, inst.split, context()).verdict) continue;
    ++cosymplectic;
    const sm::DefectReport r = sm::defect_of_natural_normal_bundle(inst.D, inst.split, context());
    o.require(r.verdict.holds, inst.name + ": " + r.verdict.certificate);
    o.require(r.defaults.size() == 25, inst.name + ": expected 25 points");
    for (const auto& [p, d] : r.defaults)
      o.require(d >= inst.split.normal.size() && d <= inst.D.dim(), inst.name + ": d out of bounds at " + dirac::describe(p));

    // witnesses (C_a^V, tau_a^V), recomputed here: vector part tangent to nu N,
    // form part annihilating it, at every sampled point of nu N.
    const sm::SegmentedBasis seg = sm::adapt_basis(inst.D, inst.split, context());
    const ChartPtr tm = sm::normal_bundle_chart(inst.D.chart(), inst.split);
    std::vector<Var> pinned;
    for (std::size_t i : tm->split()->normal) pinned.push_back(tm->var(i));
    for (std::size_t a = 0; a < seg.codim(); ++a) {
      const TensorField CV = lifts::vertical_lift(tm, seg.C(a).X);
      const TensorField tV = lifts::vertical_lift(tm, seg.C(a).alpha);
      for (const Point& p : context().points(tm->vars(), pinned)) {
        for (std::size_t i : tm->split()->normal) o.require(symexpr::evaluate(CV.coefficient(i), p) == 0, inst.name + ": C^V leaves T(nu N)");
        for (std::size_t i : tm->split()->tangent) o.require(symexpr::evaluate(tV.coefficient(i), p) == 0, inst.name + ": tau^V leaves ann T(nu N)");
      }
    }
    audit_basis(seg.basis());
  }
  o.require(cosymplectic >= 3, "fewer than 3 cosymplectic instances");
  o.summary = std::to_string(cosymplectic) + " cosymplectic instances, 25 points each";
  return o;
}

Outcome second_fundamental_form(const std::vector<SubmanifoldInstance>& suite) {
  Outcome o;
  std::size_t cosymplectic = 0;
  for (const auto& inst : suite) {
    if (!sm::check_cosymplectic(inst.D, inst.split, context()).verdict) continue;
    ++cosymplectic;
    o.require(sm::second_fundamental_form(sm::adapt_basis(inst.D, inst.split, context())).is_zero(), inst.name);
  }
  const auto op = one_plus_y();
  const auto B = sm::second_fundamental_form(sm::adapt_basis(op.D, op.split, context()));
  o.require(B.at(0, 1, 0) == Expr(1), "(1+y): B(B_1, B_2) component is not 1");
  o.require(B.at(1, 0, 0) == Expr(-1), "(1+y): B(B_2, B_1) component is not -1");
  o.summary = std::to_string(cosymplectic) + " cosymplectic instances with B = 0; (1+y) component = 1";
  return o;
}

// 12
Outcome oracle_agreement() {
  Outcome o;
  o.require(oracle.decisions() > 0, "no decisions recorded");
  if (!oracle.disagreements().empty()) o.require(false, oracle.disagreements().front());
  o.require(audit.checked > 0, "no derivatives audited");
  char err[32];
  std::snprintf(err, sizeof err, "%.2e", audit.max_error);
  o.require(audit.max_error < kFdTol, std::string("finite-difference error ") + err + " at " + audit.worst);
  o.summary = std::to_string(oracle.decisions()) + " numeric decisions, " + std::to_string(oracle.disagreements().size()) +
              " disagreements; " + std::to_string(audit.checked) + " derivatives, max relative error " + err;
  return o;
}

} // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<dirac::DiracBasis> integrable;
  const auto suite = suite_instances();
  for (const auto& inst : suite) {
    if (dirac::check_integrable(inst.D)) integrable.push_back(inst.D);
    audit_basis(inst.D);
  }
  std::size_t cosymplectic = 0;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"lift identities", lift_identities},
      {"Schouten bracket and complete lift", schouten_compatibility},
      {"tangent Dirac structure", [&] { return tangent_dirac(integrable); }},
      {"tangent lift of graphs", graph_agreement},
      {"homogeneity of tangent lifts", [&] { return homogeneity(integrable); }},
      {"invariance under the tangent structure", [&] { return s_invariance(integrable); }},
      {"totally Dirac versus coisotropic normal bundle", xu_poisson},
      {"totally Dirac versus isotropic normal bundle", xu_presymplectic},
      {"vertical pullback never coisotropic", [&] { return pullback_never_coisotropic(suite); }},
      {"cosymplecticity default of the normal bundle", [&] { return defect_bounds(suite, cosymplectic); }},
      {"second fundamental form", [&] { return second_fundamental_form(suite); }},
      {"numeric oracle agreement", oracle_agreement},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first;
    if (!o.summary.empty()) std::cout << " (" << o.summary << ")";
    if (!o.ok) std::cout << "; " << o.failures << " failure(s), first: " << o.first;
    std::cout << '\n';
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  std::cout << (all ? "all criteria passed" : "some criteria failed") << " in " << static_cast<int>(took.count() + 0.5)
            << " s\n";
  return all ? 0 : 1;
}
