#pragma once

#include "torweight/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace torweight {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);

// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ... >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// [saturation(rowspan) : rowspan]; throws DependentRows.
Integer lattice_index(const IntMatrix& rows);

// Row-style Hermite form: U * M = H, H in row echelon form with positive
// pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix U;
  IntMatrix H;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

struct LinearSolution {
  bool consistent = false;
  RatVector particular;
  std::vector<RatVector> kernel;
};

LinearSolution solve_rational(const RatMatrix& a, const RatVector& b);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m);

std::size_t rank(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);
// Throws Singular.
RatMatrix inverse(const RatMatrix& m);
// Exact inverse of a unimodular integer matrix; throws NotUnimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);

std::vector<RatVector> kernel_basis(const RatMatrix& m);

// Integer solutions of A x = b by column Hermite elimination. On failure
// the certificate w has w*A integral and w*b not an integer. modulus is the
// pivot that failed to divide, 0 when there is no rational solution.
struct IntegerSolution {
  bool solvable = false;
  IntVector particular;
  std::vector<IntVector> kernel;
  RatVector certificate;
  Integer modulus;
};

IntegerSolution solve_integer(const IntMatrix& a, const IntVector& b);

// All lambda in [0,1)^k with B lambda integral; B (n x k) of rank k.
std::vector<RatVector> fractional_solutions(const IntMatrix& b);

Integer content(const IntVector& v);
// v / gcd(v); throws ZeroVector.
IntVector primitive(const IntVector& v);
// Smallest positive multiple of v that is integral, made primitive.
IntVector primitive(const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);

}  // namespace torweight
