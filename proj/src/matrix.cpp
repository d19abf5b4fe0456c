#include "mmt/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "mmt/errors.hpp"

namespace mmt {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i > n || j < 1 || j > n) throw IndexError("unit matrix index out of range");
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_)
    throw IndexError("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  return (*this)(i, j);
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

const Scalar* Matrix::first_nonzero() const {
  for (const auto& s : data_)
    if (sgn(s) != 0) return &s;
  return nullptr;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 1; i <= rows_; ++i)
    for (std::size_t j = 1; j <= cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

bool operator<(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    const int c = cmp(a.data_[k], b.data_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= Scalar(-1); }
Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return schoolbook_multiply(a, b); }

Matrix schoolbook_multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 1; i <= a.rows(); ++i)
    for (std::size_t k = 1; k <= a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 1; j <= b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Scalar trace_pairing(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace pairing shape mismatch");
  Scalar s = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    if (sgn(a.data()[k]) != 0) s += a.data()[k] * b.data()[k];
  return s;
}

namespace {

// Integer copy of m with each row scaled by the lcm of its denominators;
// scaling rows by nonzero factors leaves the rank unchanged.
std::vector<std::vector<mpz_class>> integer_rows(const Matrix& m, mpz_class* det_scale = nullptr) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  if (det_scale) *det_scale = 1;
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 1; j <= m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 1; j <= m.cols(); ++j) out[i - 1][j - 1] = m(i, j).get_num() * (l / m(i, j).get_den());
    if (det_scale) *det_scale *= l;
  }
  return out;
}

// Bareiss elimination in place; returns the rank and tracks row swaps.
std::size_t bareiss(std::vector<std::vector<mpz_class>>& a, int* sign) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  if (sign) *sign = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(a[pivot], a[rank]);
      if (sign) *sign = -*sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = a[r][c] * a[rank][col] - a[r][col] * a[rank][c];
        mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t mat_rank(const Matrix& m) {
  auto rows = integer_rows(m);
  return bareiss(rows, nullptr);
}

Scalar determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  mpz_class scale;
  auto rows = integer_rows(m, &scale);
  int sign = 1;
  const std::size_t rank = bareiss(rows, &sign);
  if (rank < m.rows()) return 0;
  // Bareiss leaves the determinant of the scaled matrix in the last pivot.
  Scalar det(mpz_class(sign * rows.back().back()), scale);
  det.canonicalize();
  return det;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix work = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 1; col <= n; ++col) {
    std::size_t pivot = col;
    while (pivot <= n && sgn(work(pivot, col)) == 0) ++pivot;
    if (pivot > n) throw SingularError("matrix is singular");
    if (pivot != col)
      for (std::size_t j = 1; j <= n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Scalar p = work(col, col);
    for (std::size_t j = 1; j <= n; ++j) {
      work(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 1; r <= n; ++r) {
      if (r == col || sgn(work(r, col)) == 0) continue;
      const Scalar f = work(r, col);
      for (std::size_t j = 1; j <= n; ++j) {
        work(r, j) -= f * work(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Matrix normalized(const Matrix& m, Scalar* scale) {
  const Scalar* lead = m.first_nonzero();
  if (!lead) {
    if (scale) *scale = 1;
    return m;
  }
  const Scalar s = *lead;
  if (scale) *scale = s;
  Matrix out = m;
  for (std::size_t i = 1; i <= out.rows(); ++i)
    for (std::size_t j = 1; j <= out.cols(); ++j) out(i, j) /= s;
  return out;
}

bool proportional(const Matrix& a, const Matrix& b, Scalar* factor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  bool found = false;
  Scalar s;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const Scalar& x = a.data()[k];
    const Scalar& y = b.data()[k];
    const bool xz = sgn(x) == 0;
    const bool yz = sgn(y) == 0;
    if (xz && yz) continue;
    if (xz != yz) return false;
    if (!found) {
      s = y / x;
      found = true;
    } else if (y != s * x) {
      return false;
    }
  }
  if (factor) *factor = found ? s : Scalar(1);
  return true;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    if (i > 1) os << "; ";
    for (std::size_t j = 1; j <= m.cols(); ++j) os << (j > 1 ? " " : "") << to_string(m(i, j));
  }
  os << ']';
  return os.str();
}

}  // namespace mmt
