#pragma once

#include "tdirac/symexpr/expr.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tdirac::symexpr {

template <typename T>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Rows of `*this` followed by rows of `below` (column counts must agree).
  DenseMatrix stacked(const DenseMatrix& below) const {
    DenseMatrix s = *this;
    if (s.rows_ == 0) s.cols_ = below.cols_;
    s.data_.insert(s.data_.end(), below.data_.begin(), below.data_.end());
    s.rows_ += below.rows_;
    return s;
  }

  DenseMatrix columns(std::span<const std::size_t> which) const {
    DenseMatrix s(rows_, which.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < which.size(); ++c) s(r, c) = (*this)(r, which[c]);
    return s;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = DenseMatrix<Rational>;
using PolyMatrix = DenseMatrix<Expr>;
using QVector = std::vector<Rational>;

QMatrix evaluate(const PolyMatrix& m, const Point& point);
PolyMatrix substitute(const PolyMatrix& m, const Substitution& s);

/// Reduced row echelon form over Q.
struct QEchelon {
  QMatrix rref;                        // rank() nonzero rows on top
  std::vector<std::size_t> pivot_cols; // one per nonzero row
  std::size_t rank() const { return pivot_cols.size(); }
};

QEchelon row_reduce(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Basis of {x : m x = 0}.
std::vector<QVector> nullspace(const QMatrix& m);
/// Basis of {y : y m = 0}.
std::vector<QVector> left_nullspace(const QMatrix& m);
/// Every row of `b` lies in the row space of `a`; decided as rank(a) == rank(a;b).
bool rowspace_contains(const QMatrix& a, const QMatrix& b);
/// A basis (as rows) of the row space of `m`.
QMatrix row_basis(const QMatrix& m);

/// Fraction-free Gauss-Jordan elimination over Q[vars], deciding linear
/// algebra over the fraction field Q(vars). After reduction every pivot row
/// carries the common scale `scale` at its pivot column and zeros at all
/// other pivot columns, i.e. reduced = scale * RREF. All intermediate
/// divisions are exact (Sylvester's identity).
class FractionFreeEchelon {
public:
  explicit FractionFreeEchelon(const PolyMatrix& m);

  std::size_t rank() const { return pivots_.size(); }
  const Expr& scale() const { return scale_; }
  const PolyMatrix& reduced() const { return reduced_; }
  std::span<const std::size_t> pivot_cols() const { return pivot_cols_; }

  /// scale * v - sum_i v[c_i] * R_i; zero iff v lies in the row space over the
  /// fraction field.
  std::vector<Expr> residual(std::span<const Expr> v) const;
  bool contains(std::span<const Expr> v) const;

  /// Polynomial basis of {x : m x = 0} over the fraction field, one vector per
  /// free column.
  std::vector<std::vector<Expr>> nullspace() const;

private:
  struct Pivot {
    std::size_t row;
    std::size_t col;
  };
  PolyMatrix reduced_;
  std::vector<Pivot> pivots_;
  std::vector<std::size_t> pivot_cols_;
  Expr scale_{1};
};

/// Rank over the fraction field.
std::size_t generic_rank(const PolyMatrix& m);
/// Every row of `b` in the row space of `a` over the fraction field.
bool generic_rowspace_contains(const PolyMatrix& a, const PolyMatrix& b);

/// Divides a polynomial vector by a common factor when one entry divides all
/// others exactly, and scales to make the first nonzero leading coefficient 1.
std::vector<Expr> simplify_vector(std::vector<Expr> v);

} // namespace tdirac::symexpr
