#include "tdirac/tensorcalc/calculus.hpp"

#include <stdexcept>

namespace tdirac::tensorcalc {

namespace {

bool is_vector(const TensorField& t) { return t.signature() == Signature::multivector(1); }
bool is_one_form(const TensorField& t) { return t.signature() == Signature::form(1); }

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

Index without(const Index& idx, std::size_t pos) {
  Index out;
  out.reserve(idx.size() - 1);
  for (std::size_t s = 0; s < idx.size(); ++s)
    if (s != pos) out.push_back(idx[s]);
  return out;
}

/// Right derivative with respect to theta_i of a multivector.
TensorField theta_derivative(const TensorField& P, std::size_t i) {
  const unsigned k = P.degree();
  TensorField out(P.chart(), Signature::multivector(k - 1));
  for (std::size_t f = 0; f < P.size(); ++f) {
    const Expr& c = P.coefficient(f);
    if (c.is_zero()) continue;
    const Index& idx = P.index_at(f);
    for (std::size_t m = 0; m < k; ++m) {
      if (idx[m] != i) continue;
      const bool odd = ((k - 1 - m) % 2) == 1;
      out.add(without(idx, m), odd ? -c : c);
    }
  }
  return out;
}

} // namespace

Expr contract(const TensorField& alpha, const TensorField& X) {
  require(is_one_form(alpha) && is_vector(X), "contract: expects a 1-form and a vector field");
  require_same_chart(alpha.chart(), X.chart(), "contract");
  Expr s;
  for (std::size_t i = 0; i < X.dim(); ++i)
    if (!alpha.coefficient(i).is_zero() && !X.coefficient(i).is_zero()) s += alpha.coefficient(i) * X.coefficient(i);
  return s;
}

Expr apply(const TensorField& X, const Expr& f) {
  require(is_vector(X), "apply: expects a vector field");
  Expr s;
  for (std::size_t i = 0; i < X.dim(); ++i) {
    if (X.coefficient(i).is_zero()) continue;
    s += X.coefficient(i) * symexpr::differentiate(f, X.chart()->var(i));
  }
  return s;
}

TensorField partial(const TensorField& t, std::size_t i) {
  const Var v = t.chart()->var(i);
  return t.map([v](const Expr& e) { return symexpr::differentiate(e, v); });
}

TensorField substitute(const TensorField& t, const symexpr::Substitution& s) {
  return t.map([&s](const Expr& e) { return symexpr::substitute(e, s); });
}

TensorField wedge(const TensorField& a, const TensorField& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  if (a.signature().is_scalar()) return a.value() * b;
  if (b.signature().is_scalar()) return b.value() * a;
  const auto ka = a.signature().kind;
  require(ka != Kind::General && ka == b.signature().kind, "wedge: expects two forms or two multivectors");
  const unsigned deg = a.degree() + b.degree();
  TensorField out(a.chart(), ka == Kind::Form ? Signature::form(deg) : Signature::multivector(deg));
  if (deg > a.dim()) return out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Expr& ca = a.coefficient(i);
    if (ca.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Expr& cb = b.coefficient(j);
      if (cb.is_zero()) continue;
      Index idx = a.index_at(i);
      const Index& jb = b.index_at(j);
      idx.insert(idx.end(), jb.begin(), jb.end());
      out.add(idx, ca * cb);
    }
  }
  return out;
}

TensorField interior_product(const TensorField& arg, const TensorField& t) {
  require_same_chart(arg.chart(), t.chart(), "interior_product");
  if (t.degree() == 0) throw std::invalid_argument("interior_product: degree-0 input");
  const Kind k = t.signature().kind;
  require((k == Kind::Form && is_vector(arg)) || (k == Kind::Multivector && is_one_form(arg)),
          "interior_product: expects (vector, form) or (1-form, multivector)");
  const unsigned deg = t.degree() - 1;
  TensorField out(t.chart(), k == Kind::Form ? Signature::form(deg) : Signature::multivector(deg));
  for (std::size_t f = 0; f < t.size(); ++f) {
    const Expr& c = t.coefficient(f);
    if (c.is_zero()) continue;
    const Index& idx = t.index_at(f);
    for (std::size_t m = 0; m < idx.size(); ++m) {
      const Expr& a = arg.coefficient(idx[m]);
      if (a.is_zero()) continue;
      const Expr term = a * c;
      out.add(without(idx, m), (m % 2) ? -term : term);
    }
  }
  return out;
}

TensorField exterior_derivative(const TensorField& form) {
  require(form.signature().kind == Kind::Form, "exterior_derivative: expects a differential form");
  TensorField out(form.chart(), Signature::form(form.degree() + 1));
  if (form.degree() + 1 > form.dim()) return out;
  for (std::size_t f = 0; f < form.size(); ++f) {
    const Expr& c = form.coefficient(f);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < form.dim(); ++i) {
      Expr dc = symexpr::differentiate(c, form.chart()->var(i));
      if (dc.is_zero()) continue;
      Index idx{i};
      const Index& rest = form.index_at(f);
      idx.insert(idx.end(), rest.begin(), rest.end());
      out.add(idx, dc);
    }
  }
  return out;
}

TensorField lie_bracket(const TensorField& X, const TensorField& Y) {
  require(is_vector(X) && is_vector(Y), "lie_bracket: expects vector fields");
  require_same_chart(X.chart(), Y.chart(), "lie_bracket");
  std::vector<Expr> out(X.dim());
  for (std::size_t j = 0; j < X.dim(); ++j) out[j] = apply(X, Y.coefficient(j)) - apply(Y, X.coefficient(j));
  return TensorField::vector_field(X.chart(), std::move(out));
}

TensorField lie_derivative(const TensorField& X, const TensorField& t) {
  require(is_vector(X), "lie_derivative: expects a vector field");
  require_same_chart(X.chart(), t.chart(), "lie_derivative");
  const std::size_t n = X.dim();
  const Signature& sig = t.signature();
  if (sig.is_scalar()) return TensorField::function(t.chart(), apply(X, t.value()));

  // dX[k][i] = d X^i / d x^k
  std::vector<std::vector<Expr>> dX(n, std::vector<Expr>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) dX[k][i] = symexpr::differentiate(X.coefficient(i), X.chart()->var(k));

  TensorField out(t.chart(), sig);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const Index& idx = out.index_at(f);
    Expr value = apply(X, t.coefficient(f));
    Index probe = idx;
    for (unsigned s = 0; s < sig.rank(); ++s) {
      for (std::size_t k = 0; k < n; ++k) {
        const Expr& d = sig.upper(s) ? dX[k][idx[s]] : dX[idx[s]][k];
        if (d.is_zero()) continue;
        probe[s] = k;
        const Expr c = t.component(probe);
        if (c.is_zero()) continue;
        if (sig.upper(s)) value -= c * d;
        else value += c * d;
      }
      probe[s] = idx[s];
    }
    out.coefficient(f) = std::move(value);
  }
  return out;
}

TensorField schouten_bracket(const TensorField& P, const TensorField& Q) {
  require_same_chart(P.chart(), Q.chart(), "schouten_bracket");
  auto multivector_like = [](const TensorField& t) {
    return t.signature().kind == Kind::Multivector || t.signature().is_scalar();
  };
  require(multivector_like(P) && multivector_like(Q), "schouten_bracket: expects multivector fields");
  const unsigned p = P.degree(), q = Q.degree();
  if (p + q == 0) return TensorField(P.chart(), Signature::scalar());
  TensorField out(P.chart(), Signature::multivector(p + q - 1));
  // (-1)^{(p-1)(q-1)}, computed in signed arithmetic since p or q may be 0
  const long sgn = (((static_cast<long>(p) - 1) * (static_cast<long>(q) - 1)) % 2 == 0) ? 1 : -1;
  for (std::size_t i = 0; i < P.dim(); ++i) {
    if (p > 0) {
      TensorField dq = partial(Q, i);
      if (!dq.is_zero()) out += wedge(theta_derivative(P, i), dq);
    }
    if (q > 0) {
      TensorField dp = partial(P, i);
      if (!dp.is_zero()) {
        TensorField term = wedge(theta_derivative(Q, i), dp);
        if (sgn > 0) out -= term;
        else out += term;
      }
    }
  }
  return out;
}

// -------------------------------------------------------------- EndField

EndField::EndField(TensorField t) : t_(std::move(t)) {
  if (!(t_.signature() == Signature::general(1, 1))) throw std::invalid_argument("EndField: expects a (1,1) tensor");
}

EndField EndField::identity(const ChartPtr& chart) { return scaled_identity(chart, Expr(1)); }

EndField EndField::scaled_identity(const ChartPtr& chart, const Expr& f) {
  TensorField t(chart, Signature::general(1, 1));
  for (std::size_t i = 0; i < chart->dim(); ++i) t.set(Index{i, i}, f);
  return EndField(std::move(t));
}

Expr EndField::entry(std::size_t i, std::size_t j) const { return t_.component(Index{i, j}); }

TensorField EndField::apply(const TensorField& X) const {
  require(is_vector(X), "EndField::apply: expects a vector field");
  require_same_chart(chart(), X.chart(), "EndField::apply");
  const std::size_t n = X.dim();
  std::vector<Expr> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr a = entry(i, j);
      if (!a.is_zero() && !X.coefficient(j).is_zero()) out[i] += a * X.coefficient(j);
    }
  return TensorField::vector_field(X.chart(), std::move(out));
}

TensorField EndField::pull(const TensorField& alpha) const {
  require(is_one_form(alpha), "EndField::pull: expects a 1-form");
  require_same_chart(chart(), alpha.chart(), "EndField::pull");
  const std::size_t n = alpha.dim();
  std::vector<Expr> out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Expr a = entry(i, j);
      if (!a.is_zero() && !alpha.coefficient(i).is_zero()) out[j] += alpha.coefficient(i) * a;
    }
  return TensorField::one_form(alpha.chart(), std::move(out));
}

EndField EndField::compose(const EndField& B) const {
  require_same_chart(chart(), B.chart(), "EndField::compose");
  const std::size_t n = chart()->dim();
  TensorField t(chart(), Signature::general(1, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr s;
      for (std::size_t k = 0; k < n; ++k) s += entry(i, k) * B.entry(k, j);
      t.set(Index{i, j}, s);
    }
  return EndField(std::move(t));
}

TensorField nijenhuis(const EndField& A) {
  const ChartPtr& chart = A.chart();
  const std::size_t n = chart->dim();
  TensorField out(chart, Signature::general(1, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const TensorField ei = TensorField::coordinate_vector(chart, i);
      const TensorField ej = TensorField::coordinate_vector(chart, j);
      const TensorField ai = A.apply(ei), aj = A.apply(ej);
      // [d_i, d_j] = 0, so the A^2 term drops out.
      const TensorField value =
          lie_bracket(ai, aj) - A.apply(lie_bracket(ai, ej)) - A.apply(lie_bracket(ei, aj));
      for (std::size_t k = 0; k < n; ++k) out.set(Index{k, i, j}, value.coefficient(k));
    }
  return out;
}

} // namespace tdirac::tensorcalc
