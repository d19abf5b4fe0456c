#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "mmt/codegen.hpp"
#include "mmt/constructions.hpp"
#include "mmt/errors.hpp"
#include "mmt/parser.hpp"
#include "oracles.hpp"

using namespace mmt;

namespace {

std::vector<Tensor> all_builtins() {
  return {classical(1), classical(2), classical(3), strassen(), winograd(Scalar(5, 7)), laderman(),
          lifted_winograd(), klein_orbit_sum_winograd(), laderman_variant()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Linear form written as entry -> coefficient, read off a parsed form text.
LinearForm form_from(std::string_view text) {
  const Tensor t = parse_trilinear(std::string("(") + std::string(text) + ") * b11 * c11", 1, 2);
  LinearForm f;
  const auto& a = t.terms()[0].a.data();
  for (std::size_t q = 0; q < a.size(); ++q)
    if (a[q] != 0) f.emplace_back(q, a[q]);
  return f;
}

LinearForm b_form(std::string_view text) {
  const std::string replaced = [&] {
    std::string s(text);
    std::replace(s.begin(), s.end(), 'b', 'a');
    return s;
  }();
  return form_from(replaced);
}

}  // namespace

TEST_CASE("contract12 gives the transposed product") {
  std::mt19937_64 rng(51);
  CHECK(contract12(classical(3), Matrix::identity(3), Matrix::identity(3)) == Matrix::identity(3));
  for (const Tensor& t : {classical(2), strassen(), winograd(3), laderman(), laderman_variant()})
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix a = oracle::random_rational(t.dim(), rng), b = oracle::random_rational(t.dim(), rng);
      CHECK(oracle::transpose(contract12(t, a, b)) == oracle::schoolbook(a, b));
    }
  CHECK_THROWS_AS(contract12(strassen(), Matrix::identity(3), Matrix::identity(2)), DimensionError);
}

TEST_CASE("schedules evaluate to the transposed contraction") {
  std::mt19937_64 rng(52);
  for (const Tensor& t : all_builtins()) {
    const Schedule s = extract_schedule(t);
    CHECK(s.products() == decomposition_length(t));
    CHECK(op_count(s).multiplications == decomposition_length(t));
    for (int rep = 0; rep < 100; ++rep) {
      const Matrix a = oracle::random_rational(t.dim(), rng), b = oracle::random_rational(t.dim(), rng);
      CHECK(evaluate(s, a, b) == oracle::transpose(contract12(t, a, b)));
    }
  }
}

TEST_CASE("strassen schedule reproduces the printed products") {
  const Schedule s = extract_schedule(strassen());
  const std::vector<std::pair<const char*, const char*>> printed{
      {"a11 + a22", "b11 + b22"}, {"a12 - a22", "b21 + b22"}, {"-a11 + a21", "b11 + b12"}, {"a11 + a12", "b22"},
      {"a11", "b12 - b22"},       {"a22", "-b11 + b21"},      {"a21 + a22", "b11"}};
  REQUIRE(s.products() == 7);
  for (std::size_t p = 0; p < 7; ++p) {
    CHECK(s.a_forms[p] == form_from(printed[p].first));
    CHECK(s.b_forms[p] == b_form(printed[p].second));
  }
}

TEST_CASE("operation counts") {
  CHECK(op_count(extract_schedule(classical(3))) == OpCount{27, 18, 0});
  CHECK(to_string(op_count(extract_schedule(classical(3)))) == "multiplications=27 additions=18 scalar_multiplications=0");
  CHECK(op_count(extract_schedule(strassen())) == OpCount{7, 18, 0});
  CHECK(op_count(extract_schedule(laderman_variant())).multiplications == 23);
  CHECK(op_count(extract_schedule(winograd(2))).scalar_multiplications > 0);
}

TEST_CASE("emitted code") {
  const std::string flat = emit_code(extract_schedule(strassen()));
  const std::string expected = oracle::read_file(MMT_TEST_FIXTURES "/strassen_flat.txt");
  CHECK(flat == expected);
  std::size_t product_lines = 0;
  for (const auto& line : lines_of(flat))
    if (line.find(") * ") != std::string::npos || line.find(" * (") != std::string::npos) ++product_lines;
  CHECK(product_lines == 7);
  CHECK(emit_code(extract_schedule(strassen())) == flat);

  const std::string annotated = emit_code(extract_schedule(strassen()), CodeStyle::Annotated);
  CHECK(annotated.find("t1 = (a11 + a22) * (b11 + b22)  # term 1\n") != std::string::npos);

  std::size_t computations = 0;
  for (const auto& line : lines_of(emit_code(extract_schedule(classical(1))))) {
    if (line.rfind("input", 0) == 0 || line.rfind("output", 0) == 0 || line.rfind("#", 0) == 0) continue;
    ++computations;
    CHECK(line == "c11 = a11 * b11");
  }
  CHECK(computations == 1);
}

TEST_CASE("recursive multiplication") {
  std::mt19937_64 rng(53);
  SUBCASE("multiplication counts") {
    const Matrix a4 = oracle::random_rational(4, rng), b4 = oracle::random_rational(4, rng);
    const RecursiveProduct s = recursive_multiply(strassen(), a4, b4, 1);
    CHECK(s.multiplications == 49);
    CHECK(s.product == oracle::schoolbook(a4, b4));

    const Matrix a9 = oracle::random_rational(9, rng), b9 = oracle::random_rational(9, rng);
    const RecursiveProduct v = recursive_multiply(laderman_variant(), a9, b9, 1);
    CHECK(v.multiplications == 529);
    CHECK(v.product == oracle::schoolbook(a9, b9));

    const Matrix one{{Scalar(3, 5)}};
    CHECK(recursive_multiply(laderman(), one, one, 1).multiplications == 1);
    CHECK(recursive_multiply(strassen(), a4, b4, 2).multiplications == 7 * 8);
  }
  SUBCASE("sizes 1..9 agree with schoolbook") {
    const Tensor bases[] = {strassen(), laderman_variant()};
    for (const Tensor& base : bases)
      for (std::size_t n = 1; n <= 9; ++n) {
        const Matrix a = oracle::random_rational(n, rng), b = oracle::random_rational(n, rng);
        CHECK(recursive_multiply(base, a, b, 1).product == oracle::schoolbook(a, b));
      }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(recursive_multiply(strassen(), Matrix(2, 3), Matrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(recursive_multiply(strassen(), Matrix::identity(2), Matrix::identity(3)), DimensionError);
    CHECK_THROWS_AS(recursive_multiply(klein_orbit_sum_winograd(), Matrix::identity(3), Matrix::identity(3)),
                    ValueError);
    CHECK_THROWS_AS(recursive_multiply(strassen(), Matrix::identity(2), Matrix::identity(2), 0), ValueError);
  }
}
