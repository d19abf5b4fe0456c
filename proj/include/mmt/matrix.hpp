#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "mmt/scalar.hpp"

namespace mmt {

/// Dense rows x cols matrix of exact rationals.
///
/// Entry access is 1-based, so `m(1, 1)` is the top-left entry, matching the
/// a11 .. a33 naming used for generic matrices throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Row-major literal, e.g. `Matrix{{1, 0}, {0, 1}}`. All rows must have
  /// the same length.
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n);
  /// The unit matrix e^i_j: a single 1 at row i, column j.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * cols_ + (j - 1)]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return data_[(i - 1) * cols_ + (j - 1)];
  }

  /// Bounds-checked 1-based access; throws IndexError.
  const Scalar& at(std::size_t i, std::size_t j) const;

  /// Row-major storage.
  const std::vector<Scalar>& data() const noexcept { return data_; }

  bool is_zero() const;
  /// First nonzero entry in row-major order, or nullptr for the zero matrix.
  const Scalar* first_nonzero() const;

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& s);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  /// Lexicographic over (rows, cols, entries); gives terms a canonical order.
  friend bool operator<(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, const Scalar& s);
Matrix operator*(const Scalar& s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// trace(a^T b) = sum_ij a_ij b_ij, the pairing used by every contraction.
Scalar trace_pairing(const Matrix& a, const Matrix& b);

/// Rank over the rationals, via fraction-free (Bareiss) elimination on an
/// integer-scaled copy.
std::size_t mat_rank(const Matrix& m);

/// Exact determinant (Bareiss). Throws DimensionError for non-square input.
Scalar determinant(const Matrix& m);

/// Exact inverse by Gauss-Jordan elimination. Throws SingularError.
Matrix inverse(const Matrix& m);

/// Schoolbook product.
Matrix schoolbook_multiply(const Matrix& a, const Matrix& b);

/// Copy scaled so the first nonzero entry is 1; the zero matrix is returned
/// unchanged. `scale` receives the divisor used (1 for the zero matrix).
Matrix normalized(const Matrix& m, Scalar* scale = nullptr);

/// True when b = s * a for some nonzero scalar s; the scalar is written to
/// `factor` when given. Both zero counts as proportional with factor 1.
bool proportional(const Matrix& a, const Matrix& b, Scalar* factor = nullptr);

std::string to_string(const Matrix& m);

}  // namespace mmt
