#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sisz/arith.hpp"
#include "sisz/errors.hpp"

namespace sisz {

/// Dense row-major matrix of exact scalars.
///
/// Lattice bases are stored with basis vectors as columns. Dimensions are
/// always at least 1x1; element access through at() is bounds checked.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be >= 1");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DomainError("matrix dimensions must be >= 1");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    if (cols.empty() || cols.front().empty()) throw DomainError("matrix dimensions must be >= 1");
    Matrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T& at(std::size_t r, std::size_t c) {
    check(r, c);
    return (*this)(r, c);
  }
  const T& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return (*this)(r, c);
  }

  std::vector<T> column(std::size_t c) const {
    check(0, c);
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<T> row(std::size_t r) const {
    check(r, 0);
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  void set_column(std::size_t c, const std::vector<T>& v) {
    check(0, c);
    if (v.size() != rows_) throw DomainError("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector size mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      T s = 0;
      for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
      out[r] = s;
    }
    return out;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw DomainError("matrix product size mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(r, k);
        if (a == 0) continue;
        for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
      }
    return out;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

// Exact max |a_ij|.
Integer entry_bound(const IntegerMatrix& m);

RationalMatrix to_rational(const IntegerMatrix& m);

// Bareiss fraction-free elimination; exact.
Integer determinant(const IntegerMatrix& m);

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);

// Throws RankDeficiencyError for singular input.
RationalMatrix inverse(const RationalMatrix& m);
RationalMatrix inverse(const IntegerMatrix& m);

// adj(M) with M * adj(M) = det(M) * I.
IntegerMatrix adjugate(const IntegerMatrix& m);

// Incremental exact rank tracker over Q^d: maintains a reduced echelon basis
// of the span of the vectors offered so far.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t dim) : dim_(dim) {}

  // Returns true when v increases the dimension of the span.
  bool add(const RatVec& v);
  bool add(const IntVec& v) { return add(to_rational(v)); }
  bool contains(const RatVec& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  RatVec reduce(RatVec v) const;

  std::size_t dim_;
  std::vector<RatVec> rows_;           // rows_[k] has leading 1 at pivots_[k]
  std::vector<std::size_t> pivots_;
};

}  // namespace sisz
