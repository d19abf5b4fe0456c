#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mmt/isotropy.hpp"
#include "mmt/tensor.hpp"

namespace mmt {

// ---------------------------------------------------------------------------
// Builtin tensors. Every lambda must be nonzero (ValueError otherwise).

/// sum_{i,j,k} e^i_j (x) e^j_k (x) e^k_i, n^3 terms in (i,j,k) order.
Tensor classical(std::size_t n);

/// Strassen's 7-term 2x2 decomposition.
Tensor strassen();

/// The sandwiching triple that takes strassen() to its Winograd variant.
Isotropy winograd_isotropy(const Scalar& lambda = 1);

/// act(winograd_isotropy(lambda), strassen()).
Tensor winograd(const Scalar& lambda = 1);

/// Laderman's 23-term 3x3 decomposition, parsed from its trilinear text.
Tensor laderman();
/// The checked-in trilinear text laderman() is parsed from.
std::string_view laderman_text();

/// tensor_lift(winograd(lambda), (1,1,1)).
Tensor lifted_winograd(const Scalar& lambda = 1);

/// {(I,I,I), (I,P,P), (P,P,I), (P,I,P)} with P the (1 2) transposition.
IsotropyGroup klein_group();

/// Orbit data of a cyclic group of order 4 acting monomially on the 27
/// monomials of 3x3 multiplication. Only this data is known for it; the
/// generator is not a sandwiching.
MonomialOrbitPartition cyclic_partition();

/// Monomials of a sum of monomial terms such as "a11*b11*c11 + a12*b22*c21".
/// Throws ValueError if a product is not a unit monomial term.
std::vector<Monomial> parse_monomial_sum(std::string_view text, std::size_t dim = 3);

// ---------------------------------------------------------------------------
// Term merging

/// Repeatedly merges pairs of terms whose other two factors agree up to
/// scalars: u_x (x) u_y (x) u_z + (s u_x) (x) (t u_y) (x) v_z
///        = u_x (x) u_y (x) (u_z + s t v_z).
/// Pairs are scanned in term order and merged greedily until no pair
/// qualifies. Zero terms are dropped. The coefficient form is unchanged.
Tensor merge_shared_factors(const Tensor& t);

/// merge_shared_factors(orbit_sum(klein_group(), lifted_winograd(lambda))):
/// 19 terms; not a multiplication tensor.
Tensor klein_orbit_sum_winograd(const Scalar& lambda = 1);

// ---------------------------------------------------------------------------
// Correction term
//
// For a group G acting monomially on the n^3 monomials, the identity
//   multiple * M = G(e^1_1 (x) e^1_1 (x) e^1_1) + G(zero_{111}(M)) - R
// with G(.) the plain sum over group elements and
//   R = sum_r coeff_r * G(monomial_r)
// determines each coeff_r from the residual on the orbit of monomial_r.

struct CorrectionShape {
  std::vector<Monomial> representatives;
  /// Coefficients as printed alongside the shape (for reporting only).
  std::vector<Scalar> printed;
};

/// R's shape for the Klein group: (2,3,3), (3,3,2), (3,2,3), (3,3,3), printed
/// with coefficients 1/2, 1/2, 1/2, 3.
CorrectionShape klein_correction_shape();
/// R's shape for the cyclic group: (3,3,2), (3,3,3), (3,2,3), printed with
/// coefficients 1/2, 3, 1.
CorrectionShape cyclic_correction_shape();

struct CorrectionResult {
  std::vector<Scalar> coefficients;
  std::vector<Scalar> printed;
  Tensor correction;

  /// Indices where the derived coefficient differs from the printed one.
  std::vector<std::size_t> discrepancies() const;
};

/// Solves for the shape coefficients from partition data alone and verifies
/// the full identity. Throws ValueError when a representative is not
/// covered, two representatives share an orbit, or no assignment of the
/// shape satisfies the identity.
CorrectionResult correction_term(const MonomialOrbitPartition& partition, const CorrectionShape& shape,
                                 const Scalar& multiple = 1);

/// Same, for an explicit group: coefficients come from its monomial
/// partition, while R is assembled from explicit orbit sums and the identity
/// is re-checked with explicit group actions.
CorrectionResult correction_term(const IsotropyGroup& group, const CorrectionShape& shape,
                                 const Scalar& multiple = 1);

/// Checks the identity for given coefficients using partition arithmetic.
bool decomposition_identity_holds(const MonomialOrbitPartition& partition, const CorrectionShape& shape,
                                  const std::vector<Scalar>& coefficients, const Scalar& multiple = 1);

// ---------------------------------------------------------------------------

/// merge_shared_factors(K(e^1_1^(x)3) + K(lifted_winograd(lambda)) - R_K):
/// a 23-term 3x3 multiplication tensor of Laderman's type.
Tensor laderman_variant(const Scalar& lambda = 1);

/// Resolves "classical<N>", "strassen", "winograd", "laderman",
/// "lifted-winograd", "klein-orbit-sum", "laderman-variant" (underscores
/// also accepted). Throws ValueError for unknown names.
Tensor builtin_tensor(std::string_view name, const Scalar& lambda = 1);
std::vector<std::string> builtin_tensor_names();

}  // namespace mmt
