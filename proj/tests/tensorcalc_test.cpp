#include "fields.hpp"

#include <doctest.h>

using namespace tdirac::tensorcalc;
using tdirac::symexpr::Expr;
using tdirac::symexpr::differentiate;
using tdirac::testing::bivector;
using tdirac::testing::form1;
using tdirac::testing::PolyGen;
using tdirac::testing::random_field;
using tdirac::testing::vec;
using tdirac::testing::X;

namespace {

ChartPtr chart_n(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return Chart::make(names);
}

TensorField d_(const ChartPtr& c, std::size_t i) { return TensorField::coordinate_vector(c, i); }
TensorField dx(const ChartPtr& c, std::size_t i) { return TensorField::coordinate_covector(c, i); }

/// {f,g} = P^{ij} d_i f d_j g, expanded from the full antisymmetric table.
Expr poisson(const TensorField& P, const Expr& f, const Expr& g) {
  const auto& c = P.chart();
  Expr s;
  for (std::size_t i = 0; i < c->dim(); ++i)
    for (std::size_t j = 0; j < c->dim(); ++j) {
      Expr pij = P.component(Index{i, j});
      if (pij.is_zero()) continue;
      s += pij * differentiate(f, c->var(i)) * differentiate(g, c->var(j));
    }
  return s;
}

Expr jacobiator(const TensorField& P, const Expr& f, const Expr& g, const Expr& h) {
  return poisson(P, f, poisson(P, g, h)) + poisson(P, g, poisson(P, h, f)) + poisson(P, h, poisson(P, f, g));
}

} // namespace

TEST_SUITE("tensorcalc") {

TEST_CASE("chart construction") {
  CHECK_THROWS_AS(Chart::make({}), std::invalid_argument);
  CHECK_THROWS_AS(Chart::make({"x1", "x1"}), std::invalid_argument);
  CHECK_THROWS_AS(Chart::make({"x1", "y"}, TubularSplit{{0}, {0}}), std::invalid_argument);
  auto c = Chart::make({"x1", "x2", "y"}, TubularSplit{{0, 1}, {2}});
  auto t = Chart::tangent_of(c);
  REQUIRE(t->dim() == 6);
  CHECK(t->names() == std::vector<std::string>{"x1", "x2", "y", "v1", "v2", "w"});
  CHECK(t->fiber(2) == Var::named("w"));
  CHECK(t->base_dim() == 3);
}

TEST_CASE("antisymmetric storage") {
  auto c = chart_n(3);
  TensorField P(c, Signature::multivector(2));
  P.set(Index{1, 0}, Expr(5));
  CHECK(P.component(Index{0, 1}) == Expr(-5));
  CHECK(P.component(Index{1, 0}) == Expr(5));
  CHECK(P.component(Index{1, 1}).is_zero());
  CHECK(P.size() == 3);
  CHECK(TensorField(c, Signature::multivector(0)).signature() == Signature::scalar());
  CHECK(TensorField(c, Signature::form(4)).size() == 0);
}

TEST_CASE("wedge examples") {
  auto c = chart_n(3);
  TensorField w = wedge(dx(c, 0), dx(c, 1));
  CHECK(w.size() == 3);
  CHECK(w.component(Index{0, 1}) == Expr(1));
  CHECK(w.component(Index{0, 2}).is_zero());
  CHECK(wedge(dx(c, 0), dx(c, 0)).is_zero());
  CHECK(wedge(wedge(dx(c, 0), dx(c, 1)), wedge(dx(c, 2), dx(c, 0))).is_zero());

  // so(3)*: x3 d1^d2 + x1 d2^d3 + x2 d3^d1
  TensorField so3 = wedge(X(c, 2) * d_(c, 0), d_(c, 1)) + wedge(X(c, 0) * d_(c, 1), d_(c, 2)) +
                    wedge(X(c, 1) * d_(c, 2), d_(c, 0));
  TensorField direct = bivector(c, {{0, 1, X(c, 2)}, {1, 2, X(c, 0)}, {0, 2, -X(c, 1)}});
  CHECK(so3 == direct);
}

TEST_CASE("interior product examples") {
  auto c = Chart::make({"x1", "x2", "y"});
  TensorField P = wedge(d_(c, 0), d_(c, 1));
  CHECK(interior_product(dx(c, 0), P) == d_(c, 1));
  CHECK(interior_product(dx(c, 1), P) == -d_(c, 0));
  CHECK(interior_product(d_(c, 0), wedge(dx(c, 0), dx(c, 1))) == dx(c, 1));
  TensorField Py = (Expr(1) + X(c, 2)) * P;
  CHECK(interior_product(dx(c, 2), Py).is_zero());
  CHECK_THROWS_AS(interior_product(d_(c, 0), TensorField::function(c, X(c, 0))), std::invalid_argument);
  CHECK_THROWS_AS(interior_product(d_(c, 0), P), std::invalid_argument);
}

TEST_CASE("exterior derivative examples") {
  auto c = chart_n(2);
  CHECK(exterior_derivative(X(c, 0) * dx(c, 1)) == wedge(dx(c, 0), dx(c, 1)));
  CHECK(exterior_derivative(X(c, 1) * dx(c, 0)) == -wedge(dx(c, 0), dx(c, 1)));
  CHECK(exterior_derivative(Expr(7) * wedge(dx(c, 0), dx(c, 1))).is_zero());
  CHECK(exterior_derivative(TensorField::function(c, X(c, 0) * X(c, 1))) ==
        X(c, 1) * dx(c, 0) + X(c, 0) * dx(c, 1));
}

TEST_CASE("lie bracket and lie derivative examples") {
  auto c = chart_n(2);
  CHECK(lie_bracket(d_(c, 0), d_(c, 1)).is_zero());
  CHECK(lie_bracket(X(c, 1) * d_(c, 0), d_(c, 1)) == -d_(c, 0));

  CHECK(lie_derivative(d_(c, 0), TensorField::function(c, X(c, 0) * X(c, 0))).value() == Expr(2) * X(c, 0));
  CHECK(lie_derivative(d_(c, 0), X(c, 0) * dx(c, 0)) == dx(c, 0));

  auto cy = Chart::make({"x1", "x2", "y"});
  TensorField Py = (Expr(1) + X(cy, 2)) * wedge(d_(cy, 0), d_(cy, 1));
  CHECK(lie_derivative(d_(cy, 2), Py) == wedge(d_(cy, 0), d_(cy, 1)));

  // L_{x1 d1} dx1 = dx1 and L_{x1 d1} d1 = -d1
  TensorField E = X(c, 0) * d_(c, 0);
  CHECK(lie_derivative(E, dx(c, 0)) == dx(c, 0));
  CHECK(lie_derivative(E, d_(c, 0)) == -d_(c, 0));
}

TEST_CASE("schouten examples") {
  auto c4 = Chart::make({"x1", "x2", "y1", "y2"});
  TensorField P = wedge(d_(c4, 0), d_(c4, 1)) + wedge(d_(c4, 2), d_(c4, 3));
  CHECK(schouten_bracket(P, P).is_zero());

  auto c = chart_n(3);
  TensorField so3 = bivector(c, {{0, 1, X(c, 2)}, {1, 2, X(c, 0)}, {0, 2, -X(c, 1)}});
  CHECK(schouten_bracket(so3, so3).is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(jacobiator(so3, X(c, i), X(c, j), X(c, k)).is_zero());

  // Not Poisson: d1^d2 + x2 d2^d3 gives {x1,{x2,x3}} = 1.
  TensorField bad = bivector(c, {{0, 1, Expr(1)}, {1, 2, X(c, 1)}});
  CHECK_FALSE(schouten_bracket(bad, bad).is_zero());
  CHECK_FALSE(jacobiator(bad, X(c, 0), X(c, 1), X(c, 2)).is_zero());

  PolyGen g(11);
  for (int t = 0; t < 20; ++t) {
    TensorField Xf = random_field(g, c, Signature::multivector(1));
    TensorField Yf = random_field(g, c, Signature::multivector(1));
    CHECK(schouten_bracket(Xf, Yf) == lie_bracket(Xf, Yf));
    Expr f = g.poly(c->vars(), 3);
    CHECK(schouten_bracket(Xf, TensorField::function(c, f)).value() == apply(Xf, f));
  }
}

TEST_CASE("schouten sign convention matches the Jacobi oracle") {
  // [P,P](dx^i,dx^j,dx^k) = kappa * Jac(x_i,x_j,x_k) with one kappa for every P.
  PolyGen g(2024);
  auto c = chart_n(4);
  std::optional<tdirac::symexpr::Rational> kappa;
  int nonzero = 0;
  for (int t = 0; t < 60; ++t) {
    TensorField P = random_field(g, c, Signature::multivector(2), 2);
    TensorField S = schouten_bracket(P, P);
    for (std::size_t f = 0; f < S.size(); ++f) {
      const Index& idx = S.index_at(f);
      Expr jac = jacobiator(P, X(c, idx[0]), X(c, idx[1]), X(c, idx[2]));
      CHECK(S.coefficient(f).is_zero() == jac.is_zero());
      if (jac.is_zero()) continue;
      ++nonzero;
      const auto& lt = jac.leading();
      tdirac::symexpr::Rational ratio;
      // find the matching term in S
      for (const auto& term : S.coefficient(f).terms())
        if (term.monomial == lt.monomial) ratio = term.coeff / lt.coeff;
      if (!kappa) kappa = ratio;
      CHECK(ratio == *kappa);
      CHECK(S.coefficient(f) == jac.scaled(*kappa));
    }
  }
  CHECK(nonzero > 20);
  REQUIRE(kappa);
  CHECK(abs(*kappa) == 2);
}

TEST_CASE("d o d = 0") {
  PolyGen g(7);
  for (int t = 0; t < 60; ++t) {
    auto c = chart_n(2 + static_cast<std::size_t>(t % 3));
    const unsigned k = static_cast<unsigned>(g.coin(0, static_cast<int>(c->dim()) - 1));
    TensorField phi = random_field(g, c, Signature::form(k), 3);
    CHECK(exterior_derivative(exterior_derivative(phi)).is_zero());
  }
}

TEST_CASE("Cartan formula on forms") {
  PolyGen g(8);
  for (int t = 0; t < 60; ++t) {
    auto c = chart_n(2 + static_cast<std::size_t>(t % 3));
    const unsigned k = static_cast<unsigned>(g.coin(1, static_cast<int>(c->dim())));
    TensorField phi = random_field(g, c, Signature::form(k), 2);
    TensorField Xf = random_field(g, c, Signature::multivector(1), 2);
    TensorField rhs = interior_product(Xf, exterior_derivative(phi)) +
                      exterior_derivative(interior_product(Xf, phi));
    CHECK(lie_derivative(Xf, phi) == rhs);
  }
}

TEST_CASE("Lie derivative is a derivation commuting with contraction") {
  PolyGen g(9);
  for (int t = 0; t < 50; ++t) {
    auto c = chart_n(3);
    TensorField Xf = random_field(g, c, Signature::multivector(1));
    TensorField Yf = random_field(g, c, Signature::multivector(1));
    TensorField a = random_field(g, c, Signature::form(1));
    CHECK(lie_derivative(Xf, Yf) == lie_bracket(Xf, Yf));
    // X(a(Y)) = (L_X a)(Y) + a([X,Y])
    CHECK(apply(Xf, contract(a, Yf)) == contract(lie_derivative(Xf, a), Yf) + contract(a, lie_bracket(Xf, Yf)));
    // same through a general (1,1) tensor: L_X (Y (x) a) traced
    TensorField T(c, Signature::general(1, 1));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) T.set(Index{i, j}, Yf.coefficient(i) * a.coefficient(j));
    TensorField LT = lie_derivative(Xf, T);
    Expr trace;
    for (std::size_t i = 0; i < 3; ++i) trace += LT.component(Index{i, i});
    CHECK(trace == apply(Xf, contract(a, Yf)));
  }
}

TEST_CASE("Jacobi identity of the Lie bracket") {
  PolyGen g(10);
  for (int t = 0; t < 50; ++t) {
    auto c = chart_n(3);
    TensorField A = random_field(g, c, Signature::multivector(1));
    TensorField B = random_field(g, c, Signature::multivector(1));
    TensorField C = random_field(g, c, Signature::multivector(1));
    TensorField jac = lie_bracket(A, lie_bracket(B, C)) + lie_bracket(B, lie_bracket(C, A)) +
                      lie_bracket(C, lie_bracket(A, B));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("Schouten graded antisymmetry") {
  PolyGen g(12);
  for (int t = 0; t < 60; ++t) {
    auto c = chart_n(2 + static_cast<std::size_t>(t % 3));
    const unsigned p = static_cast<unsigned>(g.coin(0, 3)), q = static_cast<unsigned>(g.coin(0, 3));
    TensorField P = random_field(g, c, Signature::multivector(p));
    TensorField Q = random_field(g, c, Signature::multivector(q));
    const bool even = ((static_cast<int>(p) - 1) * (static_cast<int>(q) - 1)) % 2 == 0;
    TensorField lhs = schouten_bracket(P, Q), rhs = schouten_bracket(Q, P);
    CHECK(lhs == (even ? -rhs : rhs));
  }
}

TEST_CASE("interior product is a graded derivation of the wedge") {
  PolyGen g(13);
  for (int t = 0; t < 60; ++t) {
    auto c = chart_n(4);
    const unsigned p = static_cast<unsigned>(g.coin(1, 2)), q = static_cast<unsigned>(g.coin(1, 2));
    const bool forms = t % 2 == 0;
    auto sig = [&](unsigned k) { return forms ? Signature::form(k) : Signature::multivector(k); };
    TensorField a = random_field(g, c, sig(p)), b = random_field(g, c, sig(q));
    TensorField v = random_field(g, c, forms ? Signature::multivector(1) : Signature::form(1));
    TensorField lhs = interior_product(v, wedge(a, b));
    TensorField rhs = wedge(interior_product(v, a), b);
    TensorField second = wedge(a, interior_product(v, b));
    rhs = (p % 2 == 0) ? rhs + second : rhs - second;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Nijenhuis tensor") {
  auto c = chart_n(2);
  CHECK(nijenhuis(EndField::identity(c)).is_zero());

  // A = x1 Id: frame-by-frame expansion.
  // [x1 d_i, x1 d_j] = x1 (d_i x1) d_j - x1 (d_j x1) d_i
  // A[x1 d_i, d_j] = -x1 (d_j x1) d_i,  A[d_i, x1 d_j] = x1 (d_i x1) d_j
  // N(d_i,d_j) = x1 (d_i x1) d_j - x1 (d_j x1) d_i + x1 (d_j x1) d_i - x1 (d_i x1) d_j = 0
  EndField A = EndField::scaled_identity(c, X(c, 0));
  CHECK(nijenhuis(A).is_zero());

  // A nonintegrable example: A d1 = d1, A d2 = x1 d1 + d2 ... frame oracle.
  TensorField t(c, Signature::general(1, 1));
  t.set(Index{0, 1}, X(c, 1));
  t.set(Index{1, 0}, Expr(1));
  EndField B(t);  // B d1 = d2, B d2 = x2 d1
  // N(d1,d2) = [d2, x2 d1] - B[d2, d2] - B[d1, x2 d1] = d1
  TensorField N = nijenhuis(B);
  CHECK(N.component(Index{0, 0, 1}) == Expr(1));
  CHECK(N.component(Index{1, 0, 1}).is_zero());
  CHECK(N.component(Index{0, 1, 0}) == Expr(-1));
  CHECK(B.compose(EndField::identity(c)) == B);
  CHECK(B.pull(dx(c, 0)) == form1(c, {Expr(0), X(c, 1)}));
  CHECK(B.apply(vec(c, {Expr(1), Expr(0)})) == d_(c, 1));
}

}
