#pragma once

#include "tdirac/tensorcalc/tensor_field.hpp"

namespace tdirac::tensorcalc {

/// alpha(X) for a 1-form and a vector field.
Expr contract(const TensorField& alpha, const TensorField& X);
/// X(f) for a vector field and a polynomial.
Expr apply(const TensorField& X, const Expr& f);

/// Coefficientwise d/dx^i in the chart's coordinate frame.
TensorField partial(const TensorField& t, std::size_t i);
TensorField substitute(const TensorField& t, const symexpr::Substitution& s);

/// Exterior product of two forms or two multivectors (functions act by
/// multiplication). Degrees beyond the chart dimension give the zero field.
TensorField wedge(const TensorField& a, const TensorField& b);

/// Contraction into the first slot: i(X)Phi = Phi(X, ...) for a vector field
/// and a form, i(alpha)P = P(alpha, ...) for a 1-form and a multivector.
/// Throws std::invalid_argument for degree 0 targets.
TensorField interior_product(const TensorField& arg, const TensorField& t);

/// d of a k-form (functions included).
TensorField exterior_derivative(const TensorField& form);

/// [X,Y]^j = X^i dY^j/dx^i - Y^i dX^j/dx^i.
TensorField lie_bracket(const TensorField& X, const TensorField& Y);

/// L_X of any tensor field (Leibniz over the coordinate frame).
TensorField lie_derivative(const TensorField& X, const TensorField& t);

/// Schouten-Nijenhuis bracket of multivector fields, in the sign convention
///   [P,Q] = sum_i (P <d/dtheta_i) ^ dQ/dx^i - (-1)^{(p-1)(q-1)} (Q <d/dtheta_i) ^ dP/dx^i
/// where <d/dtheta_i is the right derivative of the super-function picture
/// (d/dx^i <-> theta_i). It restricts to the Lie bracket on vector fields, to
/// X(f) on (vector, function) and [P,P] = 0 iff P(df,dg) satisfies Jacobi.
TensorField schouten_bracket(const TensorField& P, const TensorField& Q);

/// Endomorphism field A^i_j of the tangent bundle, stored as a (1,1) tensor.
class EndField {
public:
  explicit EndField(TensorField t);
  static EndField identity(const ChartPtr& chart);
  static EndField scaled_identity(const ChartPtr& chart, const Expr& f);

  const TensorField& tensor() const { return t_; }
  const ChartPtr& chart() const { return t_.chart(); }
  /// A^i_j
  Expr entry(std::size_t i, std::size_t j) const;

  /// (A X)^i = A^i_j X^j
  TensorField apply(const TensorField& X) const;
  /// (alpha o A)_j = alpha_i A^i_j
  TensorField pull(const TensorField& alpha) const;
  /// (this o B)
  EndField compose(const EndField& B) const;

  friend bool operator==(const EndField&, const EndField&) = default;

private:
  TensorField t_;
};

/// Nijenhuis torsion N_A(X,Y) = [AX,AY] - A[AX,Y] - A[X,AY] + A^2[X,Y] as the
/// (1,2) tensor N^k_{ij} = N_A(d_i, d_j)^k.
TensorField nijenhuis(const EndField& A);

} // namespace tdirac::tensorcalc
