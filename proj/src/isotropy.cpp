#include "mmt/isotropy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mmt/errors.hpp"

namespace mmt {

// ===========================================================================
// Isotropy

Isotropy::Isotropy(Matrix g1, Matrix g2, Matrix g3) : g_{std::move(g1), std::move(g2), std::move(g3)} {
  const std::size_t n = g_[0].rows();
  for (std::size_t k = 0; k < 3; ++k) {
    if (g_[k].rows() != n || g_[k].cols() != n)
      throw DimensionError("isotropy factors must share one square dimension");
    if (is_zero(determinant(g_[k])))
      throw SingularError("isotropy factor " + std::to_string(k + 1) + " is singular");
    inv_t_[k] = inverse(g_[k]).transpose();
  }
}

Isotropy Isotropy::identity(std::size_t n) {
  return Isotropy(Matrix::identity(n), Matrix::identity(n), Matrix::identity(n));
}

RankOneTerm Isotropy::apply(const RankOneTerm& term) const {
  if (term.dim() != dim()) throw DimensionError("isotropy and tensor dimensions differ");
  return {inv_t_[0] * term.a * g_[1].transpose(), inv_t_[1] * term.b * g_[2].transpose(),
          inv_t_[2] * term.c * g_[0].transpose()};
}

bool projectively_equal(const Isotropy& x, const Isotropy& y) {
  if (x.dim() != y.dim()) return false;
  for (std::size_t k = 0; k < 3; ++k)
    if (normalized(x.factor(k)) != normalized(y.factor(k))) return false;
  return true;
}

Tensor act(const Isotropy& g, const Tensor& t) {
  if (g.dim() != t.dim()) throw DimensionError("act: isotropy and tensor dimensions differ");
  Tensor out(t.dim());
  for (const auto& term : t.terms()) out.add_term(g.apply(term));
  return out;
}

Isotropy compose(const Isotropy& g, const Isotropy& h) {
  if (g.dim() != h.dim()) throw DimensionError("compose: dimension mismatch");
  return Isotropy(g.g1() * h.g1(), g.g2() * h.g2(), g.g3() * h.g3());
}

Isotropy inverse(const Isotropy& g) { return Isotropy(inverse(g.g1()), inverse(g.g2()), inverse(g.g3())); }

// ===========================================================================
// Groups

IsotropyGroup::IsotropyGroup(std::vector<Isotropy> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValueError("isotropy group must not be empty");
  const std::size_t n = elements_.front().dim();
  for (const auto& g : elements_)
    if (g.dim() != n) throw DimensionError("isotropy group elements have mixed dimensions");
  if (!projectively_equal(elements_.front(), Isotropy::identity(n)))
    throw ValueError("first group element must be the identity");
}

bool is_closed(const IsotropyGroup& group) {
  const auto& els = group.elements();
  const auto member = [&](const Isotropy& x) {
    return std::any_of(els.begin(), els.end(), [&](const Isotropy& y) { return projectively_equal(x, y); });
  };
  for (const auto& g : els) {
    if (!member(inverse(g))) return false;
    for (const auto& h : els)
      if (!member(compose(g, h))) return false;
  }
  return true;
}

Tensor orbit_sum(const IsotropyGroup& group, const Tensor& t) {
  Tensor out(t.dim());
  for (const auto& g : group.elements()) out.append(act(g, t));
  return out;
}

bool is_form_stabilized(const Isotropy& g, const Tensor& t) {
  return to_coefficient_form(act(g, t)) == to_coefficient_form(t);
}

bool is_term_stabilizer(const IsotropyGroup& group, const Tensor& t) {
  const auto reference = term_multiset(t);
  return std::all_of(group.elements().begin(), group.elements().end(),
                     [&](const Isotropy& g) { return term_multiset(act(g, t)) == reference; });
}

// ===========================================================================
// Monomials

RankOneTerm monomial_term(const Monomial& m, std::size_t n) {
  return {Matrix::unit(n, m.i, m.j), Matrix::unit(n, m.j, m.k), Matrix::unit(n, m.k, m.i)};
}

std::string to_string(const Monomial& m) {
  const auto idx = [](std::size_t x, std::size_t y) { return std::to_string(x) + std::to_string(y); };
  return "a" + idx(m.i, m.j) + "*b" + idx(m.j, m.k) + "*c" + idx(m.k, m.i);
}

namespace {

struct UnitPosition {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

std::optional<UnitPosition> single_entry(const Matrix& m) {
  std::optional<UnitPosition> found;
  for (std::size_t i = 1; i <= m.rows(); ++i)
    for (std::size_t j = 1; j <= m.cols(); ++j) {
      if (sgn(m(i, j)) == 0) continue;
      if (found) return std::nullopt;
      found = UnitPosition{i, j, m(i, j)};
    }
  return found;
}

}  // namespace

MonomialImage monomial_image(const Isotropy& g, const Monomial& m) {
  const RankOneTerm image = g.apply(monomial_term(m, g.dim()));
  const auto a = single_entry(image.a);
  const auto b = single_entry(image.b);
  const auto c = single_entry(image.c);
  if (!a || !b || !c || a->col != b->row || b->col != c->row || c->col != a->row)
    throw ValueError("isotropy does not map " + to_string(m) + " to a monomial term");
  const Scalar s = a->value * b->value * c->value;
  if (s != 1 && s != -1)
    throw ValueError("isotropy maps " + to_string(m) + " to a non-unit multiple of a monomial");
  return {{a->row, b->row, c->row}, s > 0 ? 1 : -1};
}

bool MonomialOrbit::contains(const Monomial& m) const {
  return std::binary_search(members.begin(), members.end(), m);
}

void MonomialOrbitPartition::validate() const {
  if (group_order == 0) throw ValueError("partition group order must be positive");
  std::set<Monomial> seen;
  for (const auto& orbit : orbits) {
    if (orbit.members.empty()) throw ValueError("empty orbit in partition");
    if (orbit.members.size() * orbit.stabilizer_order != group_order)
      throw ValueError("orbit of " + to_string(orbit.members.front()) + " has size " +
                       std::to_string(orbit.members.size()) + " and stabilizer order " +
                       std::to_string(orbit.stabilizer_order) + ", inconsistent with group order " +
                       std::to_string(group_order));
    if (!std::is_sorted(orbit.members.begin(), orbit.members.end()))
      throw ValueError("orbit members must be sorted");
    for (const auto& m : orbit.members) {
      if (m.i < 1 || m.i > dim || m.j < 1 || m.j > dim || m.k < 1 || m.k > dim)
        throw ValueError("monomial index out of range in partition");
      if (!seen.insert(m).second) throw ValueError("orbits are not disjoint at " + to_string(m));
    }
  }
}

std::size_t MonomialOrbitPartition::find(const Monomial& m) const {
  for (std::size_t o = 0; o < orbits.size(); ++o)
    if (orbits[o].contains(m)) return o;
  return npos;
}

MonomialOrbit monomial_orbit(const IsotropyGroup& group, const Monomial& m) {
  MonomialOrbit orbit;
  std::set<Monomial> members;
  for (const auto& g : group.elements()) {
    const auto image = monomial_image(g, m);
    members.insert(image.monomial);
    if (image.monomial == m) ++orbit.stabilizer_order;
  }
  orbit.members.assign(members.begin(), members.end());
  return orbit;
}

MonomialOrbitPartition monomial_partition(const IsotropyGroup& group) {
  const std::size_t n = group.dim();
  MonomialOrbitPartition partition{n, group.order(), {}};
  std::set<Monomial> covered;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k) {
        const Monomial m{i, j, k};
        if (covered.contains(m)) continue;
        auto orbit = monomial_orbit(group, m);
        covered.insert(orbit.members.begin(), orbit.members.end());
        partition.orbits.push_back(std::move(orbit));
      }
  partition.validate();
  return partition;
}

Tensor orbit_partition_sum(const MonomialOrbitPartition& partition, const std::vector<Scalar>& coeffs) {
  partition.validate();
  if (coeffs.size() != partition.orbits.size())
    throw ValueError("expected one coefficient per orbit (" + std::to_string(partition.orbits.size()) + ")");
  Tensor out(partition.dim);
  for (std::size_t o = 0; o < partition.orbits.size(); ++o) {
    if (is_zero(coeffs[o])) continue;
    const Scalar weight = coeffs[o] * partition.orbits[o].stabilizer_order;
    for (const auto& m : partition.orbits[o].members) {
      RankOneTerm term = monomial_term(m, partition.dim);
      term.a *= weight;
      out.add_term(std::move(term));
    }
  }
  return out;
}

Tensor partition_group_sum(const MonomialOrbitPartition& partition, const Monomial& m) {
  const std::size_t o = partition.find(m);
  if (o == MonomialOrbitPartition::npos) throw ValueError(to_string(m) + " is not covered by the partition");
  std::vector<Scalar> coeffs(partition.orbits.size(), Scalar(0));
  coeffs[o] = 1;
  return orbit_partition_sum(partition, coeffs);
}

// ===========================================================================
// Stabilizer search

Matrix SignedPermutation::to_matrix() const {
  const std::size_t n = perm.size();
  Matrix m(n, n);
  for (std::size_t q = 0; q < n; ++q) m(perm[q] + 1, q + 1) = (negated >> q) & 1U ? -1 : 1;
  return m;
}

Isotropy SignedPermutationTriple::to_isotropy() const {
  return Isotropy(factors[0].to_matrix(), factors[1].to_matrix(), factors[2].to_matrix());
}

std::vector<SignedPermutation> signed_permutations(std::size_t n) {
  std::vector<std::uint8_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint8_t{0});
  std::vector<SignedPermutation> out;
  do {
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) out.push_back({perm, mask});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// For signed permutations G^-T = G, so the action sends the coefficient of
// (i,j,k,l,m,o) to (p1 i, p2 j, p2 k, p3 l, p3 m, p1 o) with sign
// s1_i s2_j s2_k s3_l s3_m s1_o.
class FormPermutationCheck {
 public:
  explicit FormPermutationCheck(const Tensor& t) : n_(t.dim()), dense_(pow6(t.dim())) {
    for (const auto& [idx, value] : to_coefficient_form(t).coeff) {
      dense_[encode(idx)] = value;
      entries_.emplace_back(idx, value);
    }
  }

  bool stabilizes(const SignedPermutation& g1, const SignedPermutation& g2, const SignedPermutation& g3) const {
    for (const auto& [idx, value] : entries_) {
      const std::array<const SignedPermutation*, 6> by_slot{&g1, &g2, &g2, &g3, &g3, &g1};
      FormIndex image;
      int sign = 1;
      for (std::size_t s = 0; s < 6; ++s) {
        const std::size_t q = idx[s] - 1;
        image[s] = by_slot[s]->perm[q] + 1;
        if ((by_slot[s]->negated >> q) & 1U) sign = -sign;
      }
      const Scalar& target = dense_[encode(image)];
      if (sign > 0 ? target != value : target != -value) return false;
    }
    return true;
  }

 private:
  static std::size_t pow6(std::size_t n) { return n * n * n * n * n * n; }
  std::size_t encode(const FormIndex& idx) const {
    std::size_t code = 0;
    for (std::size_t v : idx) code = code * n_ + (v - 1);
    return code;
  }

  std::size_t n_;
  std::vector<Scalar> dense_;
  std::vector<std::pair<FormIndex, Scalar>> entries_;
};

}  // namespace

StabilizerSearchResult monomial_stabilizer_search(const Tensor& t, CandidateFamily family) {
  if (family != CandidateFamily::SignedPermutation) throw ValueError("unsupported candidate family");
  if (t.dim() > 3) throw ValueError("signed-permutation stabilizer search is limited to n <= 3");
  const auto perms = signed_permutations(t.dim());
  const FormPermutationCheck check(t);
  StabilizerSearchResult result;
  for (const auto& g1 : perms)
    for (const auto& g2 : perms)
      for (const auto& g3 : perms) {
        ++result.candidates_checked;
        if (check.stabilizes(g1, g2, g3)) result.stabilizers.push_back({{g1, g2, g3}});
      }
  return result;
}

}  // namespace mmt
