#pragma once

#include "tdirac/tensorcalc/calculus.hpp"

namespace tdirac::lifts {

using symexpr::Expr;
using tensorcalc::ChartPtr;
using tensorcalc::EndField;
using tensorcalc::TensorField;

/// Tangent chart (x^1..x^n, v^1..v^n) of a base chart.
ChartPtr tangent_chart(const ChartPtr& base, std::vector<std::string> fiber_names = {});

/// f^V = f o pi (the same polynomial, read on TM).
Expr vertical_lift(const ChartPtr& tc, const Expr& f);
/// f^C = l_{df} = v^i df/dx^i.
Expr complete_lift(const ChartPtr& tc, const Expr& f);

/// l_alpha = alpha_i(x) v^i.
Expr linear_function(const ChartPtr& tc, const TensorField& alpha);

/// E = v^i d/dv^i.
TensorField euler_field(const ChartPtr& tc);

/// S(d/dx^i) = d/dv^i, S(d/dv^i) = 0.
EndField tangent_structure(const ChartPtr& tc);

/// Lifts of arbitrary tensor fields on the base chart of `tc`. Both are
/// computed factorwise on the coordinate frame with
///   (d_i)^V = d/dv^i, (dx^i)^V = dx^i, (d_i)^C = d/dx^i, (dx^i)^C = dv^i,
///   (T (x) U)^V = T^V (x) U^V,  (T (x) U)^C = T^C (x) U^V + T^V (x) U^C,
///   (f T)^C = f^C T^V + f^V T^C.
TensorField vertical_lift(const ChartPtr& tc, const TensorField& t);
TensorField complete_lift(const ChartPtr& tc, const TensorField& t);

} // namespace tdirac::lifts
