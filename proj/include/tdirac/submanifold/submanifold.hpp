#pragma once

#include "tdirac/dirac/dirac.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdirac::submanifold {

using dirac::CheckContext;
using dirac::DiracBasis;
using dirac::DiracPair;
using dirac::Verdict;
using symexpr::Expr;
using symexpr::Point;
using symexpr::PolyMatrix;
using symexpr::QMatrix;
using tensorcalc::ChartPtr;
using tensorcalc::TensorField;
using tensorcalc::TubularSplit;

/// Tubular split carried by the chart; throws std::invalid_argument if absent.
const TubularSplit& split_of(const ChartPtr& chart);

/// Points of N = {y = 0} on the chart.
std::vector<Point> points_on_N(const ChartPtr& chart, const TubularSplit& split, const CheckContext& ctx);
/// Substitution y^a -> 0.
symexpr::Substitution restrict_to_N(const ChartPtr& chart, const TubularSplit& split);

/// A basis whose pairs are grouped into (B_u, eps_u), u over the tangent
/// coordinates, and (C_a, tau_a), a over the normal coordinates. Accessor
/// arguments are positions in split.tangent (u, s) and split.normal (a, h).
class SegmentedBasis {
public:
  SegmentedBasis(DiracBasis basis, TubularSplit split, std::vector<std::size_t> b_pairs, std::vector<std::size_t> c_pairs);
  /// Pair i goes with coordinate i: B if that coordinate is tangent, C otherwise.
  static SegmentedBasis positional(const DiracBasis& basis, const TubularSplit& split);

  const DiracBasis& basis() const { return basis_; }
  const TubularSplit& split() const { return split_; }
  const ChartPtr& chart() const { return basis_.chart(); }
  std::size_t tangent_dim() const { return split_.tangent.size(); }
  std::size_t codim() const { return split_.normal.size(); }

  const DiracPair& B(std::size_t u) const { return basis_[b_pairs_.at(u)]; }
  const DiracPair& C(std::size_t a) const { return basis_[c_pairs_.at(a)]; }

  const Expr& b(std::size_t u, std::size_t s) const;
  const Expr& bp(std::size_t u, std::size_t h) const;
  const Expr& c(std::size_t a, std::size_t s) const;
  const Expr& cp(std::size_t a, std::size_t h) const;
  const Expr& e(std::size_t u, std::size_t s) const;
  const Expr& ep(std::size_t u, std::size_t h) const;
  const Expr& t(std::size_t a, std::size_t s) const;
  const Expr& tp(std::size_t a, std::size_t h) const;

  /// Pairs reordered as B_1..B_k, C_1..C_m.
  DiracBasis ordered() const;

  /// b'(x,0) = e'(x,0) = c(x,0) = t(x,0) = 0, checked as polynomial identities.
  Verdict adapted() const;
  /// The isotropy relations among the B and C pairs hold identically.
  Verdict isotropic() const;

private:
  DiracBasis basis_;
  TubularSplit split_;
  std::vector<std::size_t> b_pairs_, c_pairs_;
};

struct AdaptationFailed : std::runtime_error {
  explicit AdaptationFailed(const std::string& what) : std::runtime_error(what) {}
};
struct NotAdapted : std::invalid_argument {
  explicit NotAdapted(const std::string& what) : std::invalid_argument(what) {}
};

/// (pr_TN X, pr_T*N alpha) stays in D|_N at every sampled point of N.
Verdict check_properly_normalized(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx);

/// A basis satisfying the vanishing conditions along N. An input that is
/// already adapted (up to order) is returned as is; otherwise the B and C
/// pairs are polynomial combinations annihilating the normal, respectively
/// tangent, columns on N. Throws AdaptationFailed.
SegmentedBasis adapt_basis(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx = {});

/// The pairs (B_u, eps_u) on y = 0 with normal parts dropped, on the chart of N.
DiracBasis induced_dirac(const SegmentedBasis& adapted);

/// Rows spanning H_x(N,D) in T_xM.
QMatrix pseudo_normal_at(const DiracBasis& D, const TubularSplit& split, const Point& x, const CheckContext& ctx = {});
/// dim[D_x cap (T_xN + ann T_xN)].
std::size_t cosymplecticity_default(const DiracBasis& D, const TubularSplit& split, const Point& x,
                                    const CheckContext& ctx = {});

struct CosymplecticReport {
  Verdict verdict;
  /// d(x) at every sampled point of N.
  std::vector<std::pair<Point, std::size_t>> defaults;
};
/// d = 0 and H(N,D) = span{d/dy^a} at all sampled points; when both hold the
/// adapted basis must also have invertible e(x,0) and c'(x,0).
CosymplecticReport check_cosymplectic(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx);

/// B_{uv,a} = (b^s_v de_us/dy^a + e_vs db^s_u/dy^a) at y = 0.
struct SecondFundamentalForm {
  std::size_t k = 0, m = 0;
  std::vector<Expr> values; // [u][v][a]

  const Expr& at(std::size_t u, std::size_t v, std::size_t a) const { return values[(u * k + v) * m + a]; }
  bool is_zero() const;
  bool skew() const;
};
SecondFundamentalForm second_fundamental_form(const SegmentedBasis& adapted);

Verdict check_totally_dirac(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx);

enum class Mode { Coisotropic, Isotropic };
const char* to_string(Mode m);

/// Pointwise implication between "alpha in ann TN" and "X in TN" over D|_N.
Verdict check_coisotropic(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx, Mode mode);

/// Linear systems over the coefficients (lambda^u, nu^a, mu^u, xi^a) of a
/// combination of the lifted pairs, with entries polynomial in x (y = 0).
struct LinearSystemPair {
  PolyMatrix ann; // form part annihilates T(nu N)
  PolyMatrix tg;  // vector part tangent to nu N
};

/// Tangent chart of `base` whose split describes nu N = {y = 0, v = 0}:
/// tangent coordinates x^u, w^a and normal coordinates y^a, v^u.
ChartPtr normal_bundle_chart(const ChartPtr& base, const TubularSplit& split);

/// Conditions for a combination of the 2n pairs of `lifted` (a basis on the
/// normal-bundle chart) to have form part in ann T(nu N), and vector part in
/// T(nu N), at points of nu N. Each coefficient is affine in w; its constant
/// part and w^h parts give separate rows.
LinearSystemPair lifted_systems(const DiracBasis& lifted, const TubularSplit& base_split);

/// Systems for the tangent lift of the segmented basis, unknowns ordered as
/// (B_u^C, C_a^C, B_u^V, C_a^V).
LinearSystemPair nu_systems(const SegmentedBasis& basis);
/// Systems for the vertical pullback, unknowns ordered as
/// ((B_u^C, eps_u^V), (C_a^C, tau_a^V), d/dv^u, d/dw^a).
LinearSystemPair pullback_systems(const SegmentedBasis& basis);

/// Coisotropic: solutions(ann) within solutions(tg); isotropic: the reverse.
/// Decided at sampled points of N through row-space containment.
Verdict check_nu_coisotropic(const LinearSystemPair& systems, const ChartPtr& chart, const TubularSplit& split,
                             const CheckContext& ctx, Mode mode);

struct Certificate {
  std::vector<std::pair<std::string, Expr>> entries;
  bool vanishes() const;
  std::string render(const ChartPtr& chart) const;
};

struct XuResult {
  Verdict totally_dirac;
  Verdict lifted;                 // nu N coisotropic (Poisson) or isotropic (presymplectic)
  Certificate mixed;              // Q^{ua} or phi_{ua} on N
  Certificate normal_derivatives; // dP^{us}/dy^h or d sigma_{us}/dy^h on N
  bool consistent() const;        // both verdicts and the certificate agree
};

/// Totally Dirac versus coisotropy of nu N in (TM, P^C), with the Poisson graph basis.
XuResult xu_test(const TensorField& P, const TubularSplit& split, const CheckContext& ctx);
/// Totally Dirac versus isotropy of nu N in (TM, sigma^C).
XuResult xu_test_presymplectic(const TensorField& sigma, const TubularSplit& split, const CheckContext& ctx);

struct DefectReport {
  Verdict verdict;
  std::size_t codim = 0, dim = 0;
  std::vector<std::pair<Point, std::size_t>> defaults;
};
/// Cosymplecticity default of nu N = H(N,D) in (TM, D^tg) at sampled points of
/// nu N, with the bounds codim N <= d <= dim M and the (C_a^V, tau_a^V)
/// witnesses. Requires N cosymplectic.
DefectReport defect_of_natural_normal_bundle(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx);

/// Confirms that nu N is not coisotropic for the vertical pullback at every
/// sampled point (verdict holds when every point has a counterexample).
Verdict vertical_pullback_nu_check(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx);

struct ClassificationReport {
  Verdict properly_normalized;
  CosymplecticReport cosymplectic;
  Verdict totally_dirac;
  Verdict coisotropic;
  Verdict isotropic;
  std::optional<SecondFundamentalForm> second_fundamental_form;
};
ClassificationReport classify(const DiracBasis& D, const TubularSplit& split, const CheckContext& ctx);

} // namespace tdirac::submanifold
