#include <doctest.h>

#include <random>
#include <sstream>

#include "mmt/constructions.hpp"
#include "mmt/errors.hpp"
#include "mmt/parser.hpp"
#include "mmt/transforms.hpp"
#include "oracles.hpp"

using namespace mmt;

namespace {

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = oracle::random_rational(n, rng);
    if (oracle::laplace_det(m) != 0) return m;
  }
}

Matrix inverse_transpose(const Matrix& g) { return oracle::transpose(inverse(g)); }

// The action written out with oracle products.
RankOneTerm act_oracle(const Matrix& g1, const Matrix& g2, const Matrix& g3, const RankOneTerm& t) {
  using oracle::schoolbook;
  using oracle::transpose;
  return {schoolbook(schoolbook(inverse_transpose(g1), t.a), transpose(g2)),
          schoolbook(schoolbook(inverse_transpose(g2), t.b), transpose(g3)),
          schoolbook(schoolbook(inverse_transpose(g3), t.c), transpose(g1))};
}

MonomialOrbitPartition klein_fixture() {
  std::istringstream in(oracle::read_file(MMT_TEST_FIXTURES "/klein_orbits.txt"));
  MonomialOrbitPartition p{3, 4, {}};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find(' ');
    auto members = parse_monomial_sum(line.substr(space + 1));
    std::sort(members.begin(), members.end());
    p.orbits.push_back({members, std::stoul(line.substr(0, space))});
  }
  return p;
}

}  // namespace

TEST_CASE("isotropy construction errors") {
  CHECK_THROWS_AS(Isotropy(Matrix::identity(2), Matrix::identity(3), Matrix::identity(2)), DimensionError);
  CHECK_THROWS_AS(Isotropy(Matrix::identity(2), Matrix{{1, 1}, {1, 1}}, Matrix::identity(2)), SingularError);
  CHECK_THROWS_AS(IsotropyGroup({}), ValueError);
  CHECK_THROWS_AS(IsotropyGroup({winograd_isotropy(2)}), ValueError);
}

TEST_CASE("act matches the written-out sandwich") {
  std::mt19937_64 rng(31);
  const Tensor l = laderman();
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix g1 = random_invertible(3, rng), g2 = random_invertible(3, rng), g3 = random_invertible(3, rng);
    const Isotropy g(g1, g2, g3);
    for (const auto& term : l.terms()) CHECK(g.apply(term) == act_oracle(g1, g2, g3, term));
  }
}

TEST_CASE("sandwiching preserves the multiplication tensor") {
  std::mt19937_64 rng(32);
  for (std::size_t n = 2; n <= 3; ++n)
    for (int rep = 0; rep < 5; ++rep) {
      const Isotropy g(random_invertible(n, rng), random_invertible(n, rng), random_invertible(n, rng));
      CHECK(oracle::brent(act(g, classical(n))));
      CHECK(is_form_stabilized(g, classical(n)));
    }
  const Tensor l = laderman();
  const Isotropy g(random_invertible(3, rng), random_invertible(3, rng), random_invertible(3, rng));
  CHECK(oracle::brent(act(g, l)));
  CHECK(tensor_type(act(g, l)) == tensor_type(l));
}

TEST_CASE("compose and inverse") {
  std::mt19937_64 rng(33);
  const Isotropy g(random_invertible(2, rng), random_invertible(2, rng), random_invertible(2, rng));
  const Isotropy h(random_invertible(2, rng), random_invertible(2, rng), random_invertible(2, rng));
  const Tensor s = strassen();
  CHECK(act(compose(g, h), s) == act(g, act(h, s)));
  CHECK(act(compose(inverse(g), g), s) == s);
  CHECK(compose(g, inverse(g)) == Isotropy::identity(2));
  CHECK(projectively_equal(Isotropy(g.g1() * Scalar(3), g.g2(), g.g3() * Scalar(-1, 2)), g));
  CHECK_FALSE(projectively_equal(g, h));
}

TEST_CASE("the Klein group") {
  const IsotropyGroup k = klein_group();
  CHECK(k.order() == 4);
  CHECK(is_closed(k));
  for (const auto& g : k.elements()) CHECK(compose(g, g) == Isotropy::identity(3));
  CHECK(compose(k[1], k[2]) == k[3]);
  CHECK(is_term_stabilizer(k, classical(3)));

  const IsotropyGroup not_closed({Isotropy::identity(3), k[1], k[2]});
  CHECK_FALSE(is_closed(not_closed));
}

TEST_CASE("Klein orbit sum of e111 and of the lifted Winograd tensor") {
  const Tensor e111(3, {monomial_term({1, 1, 1}, 3)});
  const Tensor sum = orbit_sum(klein_group(), e111);
  CHECK(sum == parse_trilinear("a11*b11*c11 + a12*b22*c21 + a22*b21*c12 + a21*b12*c22", 1, 3));
  CHECK(orbit_sum(klein_group(), lifted_winograd()).size() == 28);
}

TEST_CASE("monomial images and orbits reproduce the Klein partition") {
  const IsotropyGroup k = klein_group();
  const MonomialImage img = monomial_image(k[1], {1, 1, 1});
  CHECK(img.monomial == Monomial{1, 2, 2});
  CHECK(img.sign == 1);
  CHECK(to_string(Monomial{2, 3, 3}) == "a23*b33*c32");
  CHECK_THROWS_AS(monomial_image(winograd_isotropy(), {1, 1, 1}), ValueError);

  const MonomialOrbitPartition expected = klein_fixture();
  const MonomialOrbitPartition got = monomial_partition(k);
  CHECK(got.group_order == 4);
  REQUIRE(got.orbits.size() == 9);
  for (const auto& orbit : expected.orbits) {
    const std::size_t o = got.find(orbit.members.front());
    REQUIRE(o != MonomialOrbitPartition::npos);
    CHECK(got.orbits[o] == orbit);
  }
  CHECK(monomial_orbit(k, {2, 3, 3}).members == std::vector<Monomial>{{1, 3, 3}, {2, 3, 3}});
  CHECK(monomial_orbit(k, {3, 3, 3}).stabilizer_order == 4);
}

TEST_CASE("partition arithmetic agrees with explicit group sums") {
  const IsotropyGroup k = klein_group();
  const MonomialOrbitPartition p = monomial_partition(k);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j)
      for (std::size_t l = 1; l <= 3; ++l) {
        const Tensor explicit_sum = orbit_sum(k, Tensor(3, {monomial_term({i, j, l}, 3)}));
        CHECK(oracle::same_form(partition_group_sum(p, {i, j, l}), explicit_sum));
      }

  // Each orbit is weighted by its number of members avoiding index 1.
  std::vector<Scalar> coeffs;
  for (const auto& orbit : p.orbits) {
    std::size_t avoiding = 0;
    for (const auto& m : orbit.members) avoiding += (m.i != 1 && m.j != 1 && m.k != 1) ? 1 : 0;
    coeffs.push_back(Scalar(avoiding));
  }
  const Tensor blue = orbit_partition_sum(p, coeffs);
  CHECK(oracle::same_form(blue, orbit_sum(k, tensor_zero(classical(3), {1, 1, 1}))));
}

TEST_CASE("partition validation") {
  MonomialOrbitPartition p{3, 4, {{{{1, 1, 1}, {1, 2, 2}}, 1}}};
  CHECK_THROWS_AS(p.validate(), ValueError);
  p.orbits[0].stabilizer_order = 2;
  CHECK_NOTHROW(p.validate());
  p.orbits.push_back({{{1, 1, 1}, {2, 2, 2}}, 2});
  CHECK_THROWS_AS(p.validate(), ValueError);
  CHECK_THROWS_AS(partition_group_sum(MonomialOrbitPartition{3, 1, {}}, {1, 1, 1}), ValueError);
}

TEST_CASE("signed permutations") {
  const auto perms = signed_permutations(2);
  CHECK(perms.size() == 8);
  const SignedPermutation swap_neg{{1, 0}, 0b01};
  CHECK(swap_neg.to_matrix() == Matrix{{0, 1}, {-1, 0}});
  CHECK(signed_permutations(3).size() == 48);
}

TEST_CASE("stabilizer search agrees with the generic route") {
  SUBCASE("classical(2), exhaustive cross-check") {
    const Tensor t = classical(2);
    const StabilizerSearchResult r = monomial_stabilizer_search(t);
    CHECK(r.candidates_checked == 512);
    std::size_t slow = 0;
    const auto perms = signed_permutations(2);
    for (const auto& p1 : perms)
      for (const auto& p2 : perms)
        for (const auto& p3 : perms)
          if (is_form_stabilized(Isotropy(p1.to_matrix(), p2.to_matrix(), p3.to_matrix()), t)) ++slow;
    CHECK(r.stabilizers.size() == slow);
    for (const auto& s : r.stabilizers) CHECK(is_form_stabilized(s.to_isotropy(), t));
  }
  SUBCASE("strassen") {
    const Tensor t = strassen();
    const StabilizerSearchResult r = monomial_stabilizer_search(t);
    CHECK_FALSE(r.stabilizers.empty());
    for (const auto& s : r.stabilizers) CHECK(is_form_stabilized(s.to_isotropy(), t));
  }
  SUBCASE("classical(3) contains the Klein group") {
    const StabilizerSearchResult r = monomial_stabilizer_search(classical(3));
    CHECK(r.candidates_checked == 48 * 48 * 48);
    const IsotropyGroup k = klein_group();
    for (const auto& g : k.elements()) {
      bool found = false;
      for (const auto& s : r.stabilizers) found = found || projectively_equal(s.to_isotropy(), g);
      CHECK(found);
    }
    for (std::size_t q = 0; q < r.stabilizers.size(); q += 97)
      CHECK(is_form_stabilized(r.stabilizers[q].to_isotropy(), classical(3)));
  }
  SUBCASE("laderman") {
    const Tensor t = laderman();
    const StabilizerSearchResult r = monomial_stabilizer_search(t);
    for (const auto& s : r.stabilizers) CHECK(is_form_stabilized(s.to_isotropy(), t));
  }
}
