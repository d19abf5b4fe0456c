#pragma once

#include <cstddef>

#include "mmt/tensor.hpp"

namespace mmt {

/// Index triple (i, j, k) selecting the factor patterns (i,j), (j,k), (k,i).
struct IndexTriple {
  std::size_t i = 1;
  std::size_t j = 1;
  std::size_t k = 1;

  friend bool operator==(const IndexTriple&, const IndexTriple&) = default;
  friend auto operator<=>(const IndexTriple&, const IndexTriple&) = default;
};

// Matrix operators. All indices are 1-based and bounds-checked (IndexError).

/// Row i and column j set to zero.
Matrix matrix_zero(const Matrix& m, std::size_t i, std::size_t j);
/// Row i and column j removed; requires n >= 2 (DimensionError otherwise).
Matrix matrix_project(const Matrix& m, std::size_t i, std::size_t j);
/// Inverse of matrix_project: inserts a zero row at i and zero column at j.
Matrix matrix_lift(const Matrix& m, std::size_t i, std::size_t j);

// Tensor operators, applied termwise with patterns (i,j) (j,k) (k,i).

Tensor tensor_zero(const Tensor& t, const IndexTriple& idx);
Tensor tensor_project(const Tensor& t, const IndexTriple& idx);
/// Result has dimension t.dim() + 1; idx is checked against that dimension.
Tensor tensor_lift(const Tensor& t, const IndexTriple& idx);

struct ZeroingFamilySum {
  Tensor sum;
  /// Set when the input is not a multiplication tensor; the averaging
  /// identity is only guaranteed for multiplication tensors.
  bool unverified_input = false;
};

/// Sum over all n^3 index triples of tensor_zero(t, idx). For a
/// multiplication tensor the result's form is (n-1)^3 times the form of t.
ZeroingFamilySum zeroing_family_sum(const Tensor& t);

}  // namespace mmt
