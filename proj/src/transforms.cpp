#include "mmt/transforms.hpp"

#include "mmt/errors.hpp"

namespace mmt {

namespace {

void check_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw IndexError("index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range 1.." +
                     std::to_string(n));
}

void check_square(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("expected a square matrix");
}

}  // namespace

Matrix matrix_zero(const Matrix& m, std::size_t i, std::size_t j) {
  check_square(m);
  check_index(m.rows(), i, j);
  Matrix out = m;
  for (std::size_t c = 1; c <= out.cols(); ++c) out(i, c) = 0;
  for (std::size_t r = 1; r <= out.rows(); ++r) out(r, j) = 0;
  return out;
}

Matrix matrix_project(const Matrix& m, std::size_t i, std::size_t j) {
  check_square(m);
  const std::size_t n = m.rows();
  if (n < 2) throw DimensionError("cannot project a 1x1 matrix");
  check_index(n, i, j);
  Matrix out(n - 1, n - 1);
  for (std::size_t r = 1, rr = 1; r <= n; ++r) {
    if (r == i) continue;
    for (std::size_t c = 1, cc = 1; c <= n; ++c) {
      if (c == j) continue;
      out(rr, cc++) = m(r, c);
    }
    ++rr;
  }
  return out;
}

Matrix matrix_lift(const Matrix& m, std::size_t i, std::size_t j) {
  check_square(m);
  const std::size_t n = m.rows() + 1;
  check_index(n, i, j);
  Matrix out(n, n);
  for (std::size_t r = 1, rr = 1; r <= n; ++r) {
    if (r == i) continue;
    for (std::size_t c = 1, cc = 1; c <= n; ++c) {
      if (c == j) continue;
      out(r, c) = m(rr, cc++);
    }
    ++rr;
  }
  return out;
}

namespace {

template <class MatrixOp>
Tensor termwise(const Tensor& t, std::size_t out_dim, const IndexTriple& idx, MatrixOp op) {
  Tensor out(out_dim);
  for (const auto& term : t.terms())
    out.add_term({op(term.a, idx.i, idx.j), op(term.b, idx.j, idx.k), op(term.c, idx.k, idx.i)});
  return out;
}

void check_triple(std::size_t n, const IndexTriple& idx) {
  check_index(n, idx.i, idx.j);
  check_index(n, idx.k, idx.k);
}

}  // namespace

Tensor tensor_zero(const Tensor& t, const IndexTriple& idx) {
  check_triple(t.dim(), idx);
  return termwise(t, t.dim(), idx, matrix_zero);
}

Tensor tensor_project(const Tensor& t, const IndexTriple& idx) {
  if (t.dim() < 2) throw DimensionError("cannot project a dimension-1 tensor");
  check_triple(t.dim(), idx);
  return termwise(t, t.dim() - 1, idx, matrix_project);
}

Tensor tensor_lift(const Tensor& t, const IndexTriple& idx) {
  check_triple(t.dim() + 1, idx);
  return termwise(t, t.dim() + 1, idx, matrix_lift);
}

ZeroingFamilySum zeroing_family_sum(const Tensor& t) {
  const std::size_t n = t.dim();
  ZeroingFamilySum out{Tensor(n), !is_matmul_tensor(t)};
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k) out.sum.append(tensor_zero(t, {i, j, k}));
  return out;
}

}  // namespace mmt
