#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mmt/tensor.hpp"

namespace mmt {

/// sum_r trace(T_r1^T a) trace(T_r2^T b) T_r3. For a multiplication tensor
/// this is (a b)^T. Throws DimensionError unless a, b are t.dim() x t.dim().
Matrix contract12(const Tensor& t, const Matrix& a, const Matrix& b);

/// Sparse linear form over row-major entries: (flat index, coefficient),
/// ascending in index, zero coefficients omitted.
using LinearForm = std::vector<std::pair<std::size_t, Scalar>>;

/// Straight-line bilinear program. Product p is a_forms[p] * b_forms[p];
/// output entry (s,u) (flat index (s-1)*n + u-1) is sum over c_accums of
/// coefficient * product.
struct Schedule {
  std::size_t dim = 1;
  std::vector<LinearForm> a_forms;
  std::vector<LinearForm> b_forms;
  std::vector<LinearForm> c_accums;      // n*n entries, each over products
  std::vector<std::size_t> source_terms;  // 0-based term index of each product

  std::size_t products() const noexcept { return a_forms.size(); }
};

/// One product per nonzero term. Output (s,u) collects c_factor[u,s], so
/// evaluate() returns a b for multiplication tensors.
Schedule extract_schedule(const Tensor& t);

/// Runs the schedule; equals transpose(contract12(t, a, b)).
Matrix evaluate(const Schedule& s, const Matrix& a, const Matrix& b);

struct OpCount {
  std::size_t multiplications = 0;
  std::size_t additions = 0;
  std::size_t scalar_multiplications = 0;
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

OpCount op_count(const Schedule& s);
/// "multiplications=7 additions=18 scalar_multiplications=0"
std::string to_string(const OpCount& c);

enum class CodeStyle { Flat, Annotated };

/// Straight-line pseudo-code:
///
///   # n=2 products=7
///   input a11 a12 a21 a22
///   input b11 b12 b21 b22
///   t1 = (a11 + a22) * (b11 + b22)
///   ...
///   c11 = t1 + t4 - t5 + t7
///   ...
///   output c11 c12 c21 c22
///
/// Single-entry forms are written without parentheses. An output that is
/// exactly one product used nowhere else is computed in place
/// ("c11 = a11 * b11"). Annotated style appends "  # term N" (1-based) to
/// each product line.
std::string emit_code(const Schedule& s, CodeStyle style = CodeStyle::Flat);

struct RecursiveProduct {
  Matrix product;
  std::size_t multiplications = 0;
};

/// a b by recursive block application of t's schedule after zero padding to
/// a power of t.dim(). Blocks of size <= threshold use schoolbook (size^3
/// multiplications). Throws DimensionError for non-square or mismatched
/// inputs, ValueError when t is not a multiplication tensor or threshold
/// is 0.
RecursiveProduct recursive_multiply(const Tensor& t, const Matrix& a, const Matrix& b, std::size_t threshold = 1);

}  // namespace mmt
