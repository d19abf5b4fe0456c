#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mmt/matrix.hpp"

namespace mmt {

/// One summand A (x) B (x) C of a decomposition; all factors are n x n.
struct RankOneTerm {
  Matrix a;
  Matrix b;
  Matrix c;

  std::size_t dim() const noexcept { return a.rows(); }
  /// A term is zero when any of its factors is the zero matrix.
  bool is_zero() const { return a.is_zero() || b.is_zero() || c.is_zero(); }

  friend bool operator==(const RankOneTerm&, const RankOneTerm&) = default;
};

/// Ordered collection of rank-one terms of a common dimension. Terms that
/// became zero (e.g. after zeroing) are kept for traceability; they are
/// ignored by every counting operation.
class Tensor {
 public:
  Tensor() = default;
  /// Zero tensor of dimension n.
  explicit Tensor(std::size_t dim);
  /// Throws DimensionError when a factor is not dim x dim.
  Tensor(std::size_t dim, std::vector<RankOneTerm> terms);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<RankOneTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Appends a term; throws DimensionError on a dimension mismatch.
  void add_term(RankOneTerm term);
  void append(const Tensor& other);

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<RankOneTerm> terms_;
};

/// Index sextuple ((i,j),(k,l),(m,n)) addressing the coefficient of
/// a_ij * b_kl * c_mn in the trilinear form; 1-based.
using FormIndex = std::array<std::size_t, 6>;

/// Canonical sparse coefficient table of the trilinear form of a tensor.
/// Only nonzero coefficients are stored, so table equality is form equality.
struct CoefficientForm {
  std::size_t dim = 1;
  std::map<FormIndex, Scalar> coeff;

  Scalar at(const FormIndex& idx) const;
  friend bool operator==(const CoefficientForm&, const CoefficientForm&) = default;
};

/// Multiset of factor-rank triples (rank A, rank B, rank C) over the nonzero
/// terms, stored as triple -> multiplicity.
using RankTriple = std::array<std::size_t, 3>;
struct TensorType {
  std::map<RankTriple, std::size_t> counts;

  std::size_t total() const;
  friend bool operator==(const TensorType&, const TensorType&) = default;
};

/// "[(2,2,2)^4, (1,1,1)^13, ...]" in ascending triple order.
std::string to_string(const TensorType& type);

CoefficientForm to_coefficient_form(const Tensor& t);

/// The coefficient form of n x n matrix multiplication: coefficient 1 at
/// ((i,j),(j,k),(k,i)) and zero elsewhere.
CoefficientForm matmul_form(std::size_t n);

/// True iff the tensor computes n x n matrix multiplication exactly, i.e. its
/// coefficient form is that of sum e^i_j (x) e^j_k (x) e^k_i.
bool is_matmul_tensor(const Tensor& t);

/// Number of terms whose three factors are all nonzero.
std::size_t decomposition_length(const Tensor& t);

TensorType tensor_type(const Tensor& t);

/// s1*t1 + s2*t2 by term concatenation; scalars are folded into the a-factors.
Tensor combine(const Tensor& t1, const Scalar& s1, const Tensor& t2, const Scalar& s2);

/// Scales every term of t by s (folded into the a-factors).
Tensor scaled(const Tensor& t, const Scalar& s);

/// Throws DimensionError when the dimensions differ.
bool form_equal(const Tensor& t1, const Tensor& t2);

/// sum_r trace(T_r1^T a) trace(T_r2^T b) trace(T_r3^T c).
Scalar full_contraction(const Tensor& t, const Matrix& a, const Matrix& b, const Matrix& c);

/// Canonical representative of a rank-one term under the rescaling
/// (A, B, C) -> (aA, bB, (ab)^-1 C): the first nonzero entries of A and B
/// become 1. Returns nullopt for zero terms.
std::optional<RankOneTerm> normalize_term(const RankOneTerm& term);

/// Sorted normalized nonzero terms; two tensors have the same term multiset
/// iff these vectors are equal.
std::vector<RankOneTerm> term_multiset(const Tensor& t);
bool term_multiset_equal(const Tensor& t1, const Tensor& t2);

/// Lexicographic order on (a, b, c).
bool term_less(const RankOneTerm& x, const RankOneTerm& y);

}  // namespace mmt
