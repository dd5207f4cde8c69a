#pragma once

#include "tdirac/tensorcalc/chart.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tdirac::tensorcalc {

/// General (p,q) tensors carry p contravariant slots followed by q covariant
/// slots. Forms and multivectors are the totally antisymmetric covariant and
/// contravariant cases and store only strictly increasing index tuples.
enum class Kind { General, Form, Multivector };

struct Signature {
  Kind kind = Kind::Form;
  unsigned contra = 0;
  unsigned co = 0;

  static Signature general(unsigned p, unsigned q) { return {Kind::General, p, q}; }
  static Signature form(unsigned k) { return {Kind::Form, 0, k}; }
  /// Degree 0 multivectors are functions and share the scalar signature.
  static Signature multivector(unsigned k) { return k == 0 ? form(0) : Signature{Kind::Multivector, k, 0}; }
  static Signature scalar() { return form(0); }

  unsigned rank() const { return contra + co; }
  bool antisymmetric() const { return kind != Kind::General; }
  bool is_scalar() const { return rank() == 0; }
  /// Slot s is contravariant (an upper index).
  bool upper(unsigned s) const { return s < contra; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string describe(const Signature& s);

using Index = std::vector<std::size_t>;

/// Coefficient table of a tensor field over a chart. Coefficients are exact
/// polynomials; the frame is the coordinate frame of the chart.
class TensorField {
public:
  TensorField(ChartPtr chart, Signature sig);

  static TensorField function(ChartPtr chart, Expr f);
  static TensorField vector_field(ChartPtr chart, std::vector<Expr> components);
  static TensorField one_form(ChartPtr chart, std::vector<Expr> components);
  /// d/dx^i and dx^i.
  static TensorField coordinate_vector(ChartPtr chart, std::size_t i);
  static TensorField coordinate_covector(ChartPtr chart, std::size_t i);

  const ChartPtr& chart() const { return chart_; }
  const Signature& signature() const { return sig_; }
  std::size_t dim() const { return chart_->dim(); }
  unsigned degree() const { return sig_.rank(); }

  /// Number of stored coefficients.
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Expr> coefficients() const { return coeffs_; }
  const Index& index_at(std::size_t flat) const;
  const Expr& coefficient(std::size_t flat) const { return coeffs_[flat]; }
  Expr& coefficient(std::size_t flat) { return coeffs_[flat]; }

  /// Component for an arbitrary index tuple; antisymmetric kinds apply the
  /// permutation sign and return 0 on repeated indices.
  Expr component(std::span<const std::size_t> idx) const;
  /// Scalar value of a degree 0 field.
  const Expr& value() const;

  /// Sets / accumulates a component (antisymmetric kinds: sign-adjusted).
  void set(std::span<const std::size_t> idx, Expr value);
  void add(std::span<const std::size_t> idx, const Expr& value);

  bool is_zero() const;
  TensorField map(const std::function<Expr(const Expr&)>& f) const;

  TensorField& operator+=(const TensorField& o);
  TensorField& operator-=(const TensorField& o);
  friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
  friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
  TensorField operator-() const;
  friend TensorField operator*(const Expr& f, const TensorField& t);
  friend bool operator==(const TensorField& a, const TensorField& b);

private:
  std::size_t flat_index(std::span<const std::size_t> sorted_idx) const;

  ChartPtr chart_;
  Signature sig_;
  std::shared_ptr<const std::vector<Index>> layout_;
  std::vector<Expr> coeffs_;
};

/// Renders nonzero components, e.g. "[1,2]: x3".
std::string to_string(const TensorField& t);

/// Sorts `idx` in place; returns the permutation sign, or 0 if an index repeats.
int sort_with_sign(Index& idx);

} // namespace tdirac::tensorcalc
