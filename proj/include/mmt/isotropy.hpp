#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmt/tensor.hpp"

namespace mmt {

/// Sandwiching isotropy (G1, G2, G3) of invertible n x n matrices. It maps
/// a rank-one term A (x) B (x) C to
///   (G1^-T A G2^T) (x) (G2^-T B G3^T) (x) (G3^-T C G1^T).
class Isotropy {
 public:
  /// Throws DimensionError for mismatched shapes, SingularError when a
  /// factor has zero determinant.
  Isotropy(Matrix g1, Matrix g2, Matrix g3);

  static Isotropy identity(std::size_t n);

  std::size_t dim() const noexcept { return g_[0].rows(); }
  const Matrix& factor(std::size_t k) const { return g_.at(k); }
  const Matrix& g1() const noexcept { return g_[0]; }
  const Matrix& g2() const noexcept { return g_[1]; }
  const Matrix& g3() const noexcept { return g_[2]; }

  RankOneTerm apply(const RankOneTerm& term) const;

  /// Exact factor-wise equality.
  friend bool operator==(const Isotropy& x, const Isotropy& y) { return x.g_ == y.g_; }

 private:
  std::array<Matrix, 3> g_;
  std::array<Matrix, 3> inv_t_;  // G_k^-T
};

/// Equality up to independent rescaling of each factor.
bool projectively_equal(const Isotropy& x, const Isotropy& y);

Tensor act(const Isotropy& g, const Tensor& t);

/// Composition such that act(compose(g, h), t) == act(g, act(h, t)).
Isotropy compose(const Isotropy& g, const Isotropy& h);
Isotropy inverse(const Isotropy& g);

/// Finite group of isotropies; the first element is the identity triple.
class IsotropyGroup {
 public:
  /// Throws ValueError when empty or when the first element is not the
  /// identity, DimensionError on mixed dimensions.
  explicit IsotropyGroup(std::vector<Isotropy> elements);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().dim(); }
  const std::vector<Isotropy>& elements() const noexcept { return elements_; }
  const Isotropy& operator[](std::size_t k) const { return elements_.at(k); }

 private:
  std::vector<Isotropy> elements_;
};

/// Closure under composition and inverses, up to projective equivalence.
bool is_closed(const IsotropyGroup& group);

/// sum over g in G of act(g, t), by term concatenation in element order.
Tensor orbit_sum(const IsotropyGroup& group, const Tensor& t);

bool is_form_stabilized(const Isotropy& g, const Tensor& t);

/// True when every element maps the multiset of normalized nonzero terms of
/// t onto itself.
bool is_term_stabilizer(const IsotropyGroup& group, const Tensor& t);

// ---------------------------------------------------------------------------
// Monomials and orbit partitions

/// The monomial a_ij b_jk c_ki, i.e. the rank-one term e^i_j (x) e^j_k (x) e^k_i.
struct Monomial {
  std::size_t i = 1;
  std::size_t j = 1;
  std::size_t k = 1;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

RankOneTerm monomial_term(const Monomial& m, std::size_t n);

/// "a23*b33*c32"
std::string to_string(const Monomial& m);

struct MonomialImage {
  Monomial monomial;
  int sign = 1;
};

/// Image of a monomial term under g. Throws ValueError when the image is not
/// +/- a monomial term.
MonomialImage monomial_image(const Isotropy& g, const Monomial& m);

struct MonomialOrbit {
  std::vector<Monomial> members;  // sorted
  std::size_t stabilizer_order = 0;

  bool contains(const Monomial& m) const;
  friend bool operator==(const MonomialOrbit&, const MonomialOrbit&) = default;
};

/// Orbits of a group acting monomially on the n^3 monomials (possibly only a
/// subset of them). Groups not given by explicit elements are described by
/// this data alone.
struct MonomialOrbitPartition {
  std::size_t dim = 3;
  std::size_t group_order = 1;
  std::vector<MonomialOrbit> orbits;

  /// Throws ValueError unless orbits are disjoint, indices lie in 1..dim,
  /// and |orbit| * stabilizer_order == group_order for every orbit.
  void validate() const;
  /// Index of the orbit containing m, or npos.
  std::size_t find(const Monomial& m) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

MonomialOrbit monomial_orbit(const IsotropyGroup& group, const Monomial& m);

/// Orbits of all n^3 monomials, in order of their smallest member.
MonomialOrbitPartition monomial_partition(const IsotropyGroup& group);

/// Sum over orbits of coeffs[o] * stabilizer_order * (sum of the orbit's
/// monomial terms); this equals sum_o coeffs[o] * sum_g g(m_o) for any
/// representative m_o, computed without group elements.
Tensor orbit_partition_sum(const MonomialOrbitPartition& partition, const std::vector<Scalar>& coeffs);

/// sum_g g(m) reconstructed from partition data: stabilizer * orbit sum.
/// Throws ValueError when m is not covered by the partition.
Tensor partition_group_sum(const MonomialOrbitPartition& partition, const Monomial& m);

// ---------------------------------------------------------------------------
// Stabilizer search

/// n x n signed permutation matrix P with P e_q = sign_q e_{perm[q]}
/// (0-based perm, bit q of `negated` set when sign_q = -1).
struct SignedPermutation {
  std::vector<std::uint8_t> perm;
  std::uint32_t negated = 0;

  Matrix to_matrix() const;
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

struct SignedPermutationTriple {
  std::array<SignedPermutation, 3> factors;
  Isotropy to_isotropy() const;
};

enum class CandidateFamily { SignedPermutation };

/// All signed permutation matrices of size n in deterministic order
/// (permutations lexicographically, then sign masks ascending).
std::vector<SignedPermutation> signed_permutations(std::size_t n);

struct StabilizerSearchResult {
  std::size_t candidates_checked = 0;
  std::vector<SignedPermutationTriple> stabilizers;
};

/// Every triple of the family that form-stabilizes t, in enumeration order.
/// Exhaustive over (n! 2^n)^3 candidates; requires n <= 3.
StabilizerSearchResult monomial_stabilizer_search(const Tensor& t,
                                                  CandidateFamily family = CandidateFamily::SignedPermutation);

}  // namespace mmt
