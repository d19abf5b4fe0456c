#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mmt {

/// Exact rational of unbounded magnitude. Arithmetic results are canonical
/// (gcd 1, positive denominator); values built from raw parts must go
/// through canonicalize().
using Scalar = mpq_class;

/// Parses "p", "-p" or "p/q"; the result is canonical. Throws ParseError.
Scalar parse_scalar(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Scalar& s);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

}  // namespace mmt
