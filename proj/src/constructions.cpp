#include "mmt/constructions.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>

#include "mmt/errors.hpp"
#include "mmt/parser.hpp"
#include "mmt/transforms.hpp"
#include "mmt_fixtures.hpp"

namespace mmt {

namespace {

void require_nonzero_lambda(const Scalar& lambda) {
  if (is_zero(lambda)) throw ValueError("lambda must be nonzero");
}

Tensor single_term(const RankOneTerm& term) { return Tensor(term.dim(), {term}); }

}  // namespace

// ===========================================================================
// Builtins

Tensor classical(std::size_t n) {
  if (n == 0) throw ValueError("classical(n) requires n >= 1");
  Tensor t(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k) t.add_term(monomial_term({i, j, k}, n));
  return t;
}

Tensor strassen() {
  // clang-format off
  return Tensor(2, {
    {Matrix{{1, 0}, {0, 1}},  Matrix{{1, 0}, {0, 1}},  Matrix{{1, 0}, {0, 1}}},
    {Matrix{{0, 1}, {0, -1}}, Matrix{{0, 0}, {1, 1}},  Matrix{{1, 0}, {0, 0}}},
    {Matrix{{-1, 0}, {1, 0}}, Matrix{{1, 1}, {0, 0}},  Matrix{{0, 0}, {0, 1}}},
    {Matrix{{1, 1}, {0, 0}},  Matrix{{0, 0}, {0, 1}},  Matrix{{-1, 0}, {1, 0}}},
    {Matrix{{1, 0}, {0, 0}},  Matrix{{0, 1}, {0, -1}}, Matrix{{0, 0}, {1, 1}}},
    {Matrix{{0, 0}, {0, 1}},  Matrix{{-1, 0}, {1, 0}}, Matrix{{1, 1}, {0, 0}}},
    {Matrix{{0, 0}, {1, 1}},  Matrix{{1, 0}, {0, 0}},  Matrix{{0, 1}, {0, -1}}},
  });
  // clang-format on
}

Isotropy winograd_isotropy(const Scalar& lambda) {
  require_nonzero_lambda(lambda);
  const Scalar inv = 1 / lambda;
  return Isotropy(Matrix{{0, inv}, {-1, 0}}, Matrix{{inv, -inv}, {0, 1}}, Matrix{{-inv, 0}, {1, -1}});
}

Tensor winograd(const Scalar& lambda) { return act(winograd_isotropy(lambda), strassen()); }

std::string_view laderman_text() { return fixtures::kLadermanText; }

Tensor laderman() { return parse_trilinear(laderman_text(), 1, 3); }

Tensor lifted_winograd(const Scalar& lambda) { return tensor_lift(winograd(lambda), {1, 1, 1}); }

IsotropyGroup klein_group() {
  const Matrix id = Matrix::identity(3);
  const Matrix p{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  return IsotropyGroup({Isotropy(id, id, id), Isotropy(id, p, p), Isotropy(p, p, id), Isotropy(p, id, p)});
}

std::vector<Monomial> parse_monomial_sum(std::string_view text, std::size_t dim) {
  const Tensor t = parse_trilinear(text, 1, dim);
  std::vector<Monomial> out;
  for (const auto& term : t.terms()) {
    bool matched = false;
    for (std::size_t i = 1; i <= dim && !matched; ++i)
      for (std::size_t j = 1; j <= dim && !matched; ++j)
        for (std::size_t k = 1; k <= dim && !matched; ++k)
          if (term == monomial_term({i, j, k}, dim)) {
            out.push_back({i, j, k});
            matched = true;
          }
    if (!matched) throw ValueError("product is not a unit monomial term a_ij*b_jk*c_ki");
  }
  return out;
}

MonomialOrbitPartition cyclic_partition() {
  struct PrintedOrbit {
    const char* sum;
    std::size_t stabilizer;
  };
  // clang-format off
  static constexpr std::array<PrintedOrbit, 8> kOrbits{{
    {"a11*b11*c11 + a12*b22*c21 + a22*b21*c12 + a21*b12*c22", 1},
    {"a22*b22*c22 + a21*b11*c12 + a11*b12*c21 + a12*b21*c11", 1},
    {"a22*b23*c32 + a21*b13*c32 + a11*b13*c31 + a12*b23*c31", 1},
    {"a32*b22*c23 + a31*b12*c23 + a23*b31*c12 + a13*b31*c11", 1},
    {"a23*b32*c22 + a31*b11*c13 + a13*b32*c21 + a32*b21*c13", 1},
    {"a32*b23*c33 + a31*b13*c33 + a23*b33*c32 + a13*b33*c31", 1},
    {"a33*b32*c23 + a33*b31*c13", 2},
    {"a33*b33*c33", 4},
  }};
  // clang-format on
  MonomialOrbitPartition p{3, 4, {}};
  for (const auto& o : kOrbits) {
    auto members = parse_monomial_sum(o.sum);
    std::sort(members.begin(), members.end());
    p.orbits.push_back({std::move(members), o.stabilizer});
  }
  p.validate();
  return p;
}

// ===========================================================================
// Merging

namespace {

// If x and y agree in every factor except `free`, returns the scalar s with
// y = (shared factors of x) (x) (s * y_free).
std::optional<Scalar> shared_scale(const RankOneTerm& x, const RankOneTerm& y, int free) {
  const std::array<const Matrix*, 3> fx{&x.a, &x.b, &x.c};
  const std::array<const Matrix*, 3> fy{&y.a, &y.b, &y.c};
  Scalar total = 1;
  for (int f = 0; f < 3; ++f) {
    if (f == free) continue;
    Scalar s;
    if (!proportional(*fx[f], *fy[f], &s)) return std::nullopt;
    total *= s;
  }
  return total;
}

Matrix& factor(RankOneTerm& t, int f) { return f == 0 ? t.a : f == 1 ? t.b : t.c; }

}  // namespace

Tensor merge_shared_factors(const Tensor& t) {
  std::vector<RankOneTerm> terms;
  for (const auto& term : t.terms())
    if (!term.is_zero()) terms.push_back(term);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < terms.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < terms.size() && !changed; ++j)
        for (int free = 2; free >= 0 && !changed; --free) {
          const auto s = shared_scale(terms[i], terms[j], free);
          if (!s) continue;
          factor(terms[i], free) += factor(terms[j], free) * *s;
          terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(j));
          if (terms[i].is_zero()) terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
  }
  return Tensor(t.dim(), std::move(terms));
}

Tensor klein_orbit_sum_winograd(const Scalar& lambda) {
  return merge_shared_factors(orbit_sum(klein_group(), lifted_winograd(lambda)));
}

// ===========================================================================
// Correction term

CorrectionShape klein_correction_shape() {
  const Scalar half(1, 2);
  return {{{2, 3, 3}, {3, 3, 2}, {3, 2, 3}, {3, 3, 3}}, {half, half, half, Scalar(3)}};
}

CorrectionShape cyclic_correction_shape() {
  return {{{3, 3, 2}, {3, 3, 3}, {3, 2, 3}}, {Scalar(1, 2), Scalar(3), Scalar(1)}};
}

std::vector<std::size_t> CorrectionResult::discrepancies() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < coefficients.size() && r < printed.size(); ++r)
    if (coefficients[r] != printed[r]) out.push_back(r);
  return out;
}

namespace {

FormIndex monomial_index(const Monomial& m) { return {m.i, m.j, m.j, m.k, m.k, m.i}; }

// Monomials of tensor_zero(classical(n), (1,1,1)): indices avoid 1.
std::vector<Monomial> zeroed_classical_monomials(std::size_t n) {
  std::vector<Monomial> out;
  for (std::size_t i = 2; i <= n; ++i)
    for (std::size_t j = 2; j <= n; ++j)
      for (std::size_t k = 2; k <= n; ++k) out.push_back({i, j, k});
  return out;
}

// G(e111) + G(zero_111(M)) - multiple * M, as a coefficient form.
CoefficientForm partition_residual(const MonomialOrbitPartition& p, const Scalar& multiple) {
  Tensor acc = partition_group_sum(p, {1, 1, 1});
  for (const auto& m : zeroed_classical_monomials(p.dim)) acc.append(partition_group_sum(p, m));
  acc.append(scaled(classical(p.dim), -multiple));
  return to_coefficient_form(acc);
}

Tensor partition_correction(const MonomialOrbitPartition& p, const CorrectionShape& shape,
                            const std::vector<Scalar>& coefficients) {
  Tensor r(p.dim);
  for (std::size_t k = 0; k < shape.representatives.size(); ++k)
    r.append(scaled(partition_group_sum(p, shape.representatives[k]), coefficients[k]));
  return r;
}

void check_shape(const MonomialOrbitPartition& p, const CorrectionShape& shape) {
  if (!shape.printed.empty() && shape.printed.size() != shape.representatives.size())
    throw ValueError("printed coefficients do not match the shape");
  std::set<std::size_t> used;
  for (const auto& m : shape.representatives) {
    const std::size_t o = p.find(m);
    if (o == MonomialOrbitPartition::npos) throw ValueError(to_string(m) + " is not covered by the partition");
    if (!used.insert(o).second) throw ValueError("two shape representatives lie in one orbit");
  }
}

}  // namespace

bool decomposition_identity_holds(const MonomialOrbitPartition& partition, const CorrectionShape& shape,
                                  const std::vector<Scalar>& coefficients, const Scalar& multiple) {
  partition.validate();
  check_shape(partition, shape);
  if (coefficients.size() != shape.representatives.size())
    throw ValueError("expected one coefficient per shape representative");
  return to_coefficient_form(partition_correction(partition, shape, coefficients)) ==
         partition_residual(partition, multiple);
}

CorrectionResult correction_term(const MonomialOrbitPartition& partition, const CorrectionShape& shape,
                                 const Scalar& multiple) {
  partition.validate();
  check_shape(partition, shape);
  const CoefficientForm residual = partition_residual(partition, multiple);

  // R restricted to the orbit of representative r is coeff_r * stab_r * orbit,
  // so each coefficient is read off the residual at the representative.
  CorrectionResult result;
  result.printed = shape.printed;
  for (const auto& m : shape.representatives) {
    const auto& orbit = partition.orbits[partition.find(m)];
    result.coefficients.push_back(residual.at(monomial_index(m)) / Scalar(orbit.stabilizer_order));
  }
  result.correction = partition_correction(partition, shape, result.coefficients);
  if (to_coefficient_form(result.correction) != residual)
    throw ValueError("no coefficient assignment of this shape satisfies the decomposition identity");
  return result;
}

CorrectionResult correction_term(const IsotropyGroup& group, const CorrectionShape& shape, const Scalar& multiple) {
  CorrectionResult result = correction_term(monomial_partition(group), shape, multiple);

  const std::size_t n = group.dim();
  Tensor r(n);
  for (std::size_t k = 0; k < shape.representatives.size(); ++k)
    r.append(scaled(orbit_sum(group, single_term(monomial_term(shape.representatives[k], n))), result.coefficients[k]));

  Tensor rhs = orbit_sum(group, single_term(monomial_term({1, 1, 1}, n)));
  rhs.append(orbit_sum(group, tensor_zero(classical(n), {1, 1, 1})));
  rhs.append(scaled(r, -1));
  if (to_coefficient_form(rhs) != to_coefficient_form(scaled(classical(n), multiple)))
    throw ValueError("decomposition identity fails under the explicit group action");
  result.correction = std::move(r);
  return result;
}

// ===========================================================================

Tensor laderman_variant(const Scalar& lambda) {
  require_nonzero_lambda(lambda);
  const IsotropyGroup k = klein_group();
  Tensor t = orbit_sum(k, single_term(monomial_term({1, 1, 1}, 3)));
  t.append(orbit_sum(k, lifted_winograd(lambda)));
  t.append(scaled(correction_term(k, klein_correction_shape()).correction, -1));
  return merge_shared_factors(t);
}

namespace {

std::string canonical_name(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

}  // namespace

Tensor builtin_tensor(std::string_view name, const Scalar& lambda) {
  const std::string s = canonical_name(name);
  if (s.rfind("classical", 0) == 0) {
    const std::string digits = s.substr(9);
    if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '9')
      return classical(static_cast<std::size_t>(digits[0] - '0'));
    throw ValueError("classical builtin needs a dimension 1..9, e.g. classical3");
  }
  if (s == "strassen") return strassen();
  if (s == "winograd") return winograd(lambda);
  if (s == "laderman") return laderman();
  if (s == "lifted-winograd") return lifted_winograd(lambda);
  if (s == "klein-orbit-sum") return klein_orbit_sum_winograd(lambda);
  if (s == "laderman-variant") return laderman_variant(lambda);
  throw ValueError("unknown builtin tensor '" + std::string(name) + "'");
}

std::vector<std::string> builtin_tensor_names() {
  return {"classical<N>", "strassen", "winograd", "laderman", "lifted-winograd", "klein-orbit-sum", "laderman-variant"};
}

}  // namespace mmt
