#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "mmt/isotropy.hpp"
#include "mmt/tensor.hpp"

namespace mmt {

// ---------------------------------------------------------------------------
// Trilinear text
//
//   expr     := '0' | ['+'|'-'] product (('+'|'-') product)*
//   product  := item (('*'|'/') item)*      -- exactly one a-, b- and c-form
//   item     := '(' linform ')' | atom | integer | 'L'
//   linform  := ['+'|'-'] lterm (('+'|'-') lterm)*
//   lterm    := litem (('*'|'/') litem)*    -- exactly one atom
//   atom     := ('a'|'b'|'c') digit digit   -- 1-based row, column in 1..9
//
// Divisors must be integers or L. 'L' (or the UTF-8 lambda) stands for the
// parameter and is instantiated at parse time. Whitespace is ignored.

/// Parses a trilinear form into one rank-one term per product. The dimension
/// is the largest index seen unless `dim` is nonzero. Throws ParseError
/// (with position) on malformed input, ValueError when L appears with
/// lambda == 0.
Tensor parse_trilinear(std::string_view text, const Scalar& lambda = 1, std::size_t dim = 0);

/// One product per line, joined by '+'; the zero tensor prints as "0".
/// Zero terms are omitted. Requires dim <= 9.
std::string print_trilinear(const Tensor& t);

// ---------------------------------------------------------------------------
// Tensor file (JSON)
//
//   {
//     "format": "mmt-tensor", "version": 1,
//     "kind": "tensor" | "isotropy-group",
//     "dim": n,
//     "lambda": "p/q",                      (optional)
//     "terms": [ [A, B, C], ... ]           (A, B, C: row-major n x n)
//   }
//
// Entries are strings "p" or "p/q" (JSON integers are also accepted on
// read); writing always emits canonical strings.

enum class DocumentKind { Tensor, IsotropyGroup };

struct TensorDocument {
  DocumentKind kind = DocumentKind::Tensor;
  std::size_t dim = 1;
  std::optional<Scalar> lambda;
  std::vector<RankOneTerm> terms;
};

/// Throws ParseError for malformed JSON or rationals, DimensionError for a
/// ragged or wrongly sized matrix.
TensorDocument read_tensor_document(std::string_view text);
std::string write_tensor_document(const TensorDocument& doc);

Tensor read_tensor_file(std::string_view text);
std::string write_tensor_file(const Tensor& t, const std::optional<Scalar>& lambda = std::nullopt);

IsotropyGroup read_isotropy_group(std::string_view text);
std::string write_isotropy_group(const IsotropyGroup& group);

// Orbit partition file:
//   { "format": "mmt-orbit-partition", "version": 1, "dim": n,
//     "group_order": g,
//     "orbits": [ { "stabilizer": s, "monomials": [[i,j,k], ...] }, ... ] }
MonomialOrbitPartition read_orbit_partition(std::string_view text);
std::string write_orbit_partition(const MonomialOrbitPartition& partition);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace mmt
