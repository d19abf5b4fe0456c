#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "mmt/cli.hpp"
#include "mmt/constructions.hpp"
#include "mmt/parser.hpp"
#include "oracles.hpp"

using namespace mmt;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mmt_cli_test_" + name)).string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("verify") {
  Result r = run({"verify", "--tensor", "builtin:strassen"});
  CHECK(r.code == 0);
  CHECK(r.out == "VERIFIED n=2 terms=7\n");

  r = run({"verify", "--tensor", "builtin:klein-orbit-sum"});
  CHECK(r.code == 1);
  CHECK(r.out == "NOT A MULTIPLICATION TENSOR\n");

  r = run({"verify", "--tensor", MMT_DATA_DIR "/laderman.tri"});
  CHECK(r.code == 0);
  CHECK(r.out == "VERIFIED n=3 terms=23\n");
}

TEST_CASE("construct then compare types") {
  const std::string path = temp_path("variant.tensor");
  Result r = run({"construct", "laderman-variant", "--lambda", "1", "--out", path});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "terms=23 verified"));
  r = run({"type", "--tensor", path, "--compare", "builtin:laderman"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "TYPE MATCH"));
  r = run({"type", "--tensor", "builtin:strassen", "--compare", "builtin:classical2"});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "TYPE MISMATCH"));
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--tensor", "builtin:strassen", "--bogus"}).code == 2);
  CHECK(run({"verify", "--tensor", "builtin:nope"}).code == 2);
  CHECK(run({"verify", "--tensor", temp_path("missing")}).code == 2);
  CHECK(run({"verify", "--tensor", "builtin:winograd", "--lambda", "1/0"}).code == 2);
  CHECK(run({"codegen", "--tensor", "builtin:strassen", "--style", "fancy"}).code == 2);
  const Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "census"));
}

TEST_CASE("show, project, zero, merge, act, orbit") {
  Result r = run({"show", "--tensor", "builtin:strassen"});
  CHECK(r.code == 0);
  CHECK(parse_trilinear(r.out) == strassen());

  r = run({"show", "--tensor", "builtin:laderman", "--format", "json"});
  CHECK(read_tensor_file(r.out) == laderman());

  r = run({"project", "--tensor", "builtin:laderman", "--i", "3", "--j", "3", "--k", "3"});
  CHECK(r.code == 0);
  CHECK(oracle::brent(parse_trilinear(r.out, 1, 2)));

  r = run({"project", "--tensor", "builtin:winograd", "--i", "1", "--j", "1", "--k", "1", "--lift"});
  CHECK(parse_trilinear(r.out, 1, 3) == lifted_winograd());

  r = run({"zero", "--tensor", "builtin:classical2", "--i", "1", "--j", "1", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "a22 * b22 * c22"));

  r = run({"merge", "--tensor", MMT_TEST_FIXTURES "/merge_pair.tri"});
  CHECK(r.code == 0);
  CHECK(parse_trilinear(r.out, 1, 3).size() == 1);

  r = run({"act", "--tensor", "builtin:strassen", "--iso", "builtin:winograd", "--lambda", "2"});
  CHECK(parse_trilinear(r.out, 1, 2) == winograd(2));

  r = run({"act", "--tensor", "builtin:classical3", "--iso", MMT_DATA_DIR "/klein.json", "--element", "2"});
  CHECK(r.code == 0);
  CHECK(term_multiset_equal(parse_trilinear(r.out, 1, 3), classical(3)));

  r = run({"orbit", "--tensor", "builtin:lifted-winograd", "--group", "builtin:klein", "--merge"});
  CHECK(r.code == 0);
  CHECK(parse_trilinear(r.out, 1, 3).size() == 19);
}

TEST_CASE("correction") {
  Result r = run({"correction", "--group", "builtin:klein"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(3,3,3) coefficient=3/4 printed=3"));
  CHECK(contains(r.out, "DISCREPANCY (3,3,3) derived=3/4 printed=3"));
  CHECK(contains(r.out, "IDENTITY HOLDS"));

  r = run({"correction", "--group", "builtin:cyclic"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(3,2,3) coefficient=1 printed=1"));

  r = run({"correction", "--group", MMT_DATA_DIR "/klein.json"});
  CHECK(r.code == 0);

  const std::string path = temp_path("cyclic.json");
  write_text_file(path, write_orbit_partition(cyclic_partition()));
  r = run({"correction", "--group", path, "--shape", "332,333,323"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(3,3,3) coefficient=3/4"));
  std::filesystem::remove(path);

  r = run({"correction", "--group", "builtin:klein", "--shape", "233,332,323"});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "IDENTITY FAILS"));
}

TEST_CASE("codegen, mul, census, stabilizer search") {
  Result r = run({"codegen", "--tensor", "builtin:strassen"});
  CHECK(r.out == oracle::read_file(MMT_TEST_FIXTURES "/strassen_flat.txt"));
  r = run({"codegen", "--tensor", "builtin:classical3", "--count"});
  CHECK(r.out == "multiplications=27 additions=18 scalar_multiplications=0\n");

  r = run({"mul", "--base", "builtin:strassen", "--size", "4", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "size=4 multiplications=49 MATCH\n");
  r = run({"mul", "--base", "builtin:laderman-variant", "--size", "9"});
  CHECK(r.out == "size=9 multiplications=529 MATCH\n");

  r = run({"census", "--tensor", "builtin:laderman"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "7-term projections: 4 (2,1,3) (2,3,2) (3,1,2) (3,3,3)\n"));
  CHECK(contains(r.out, "8-term projections: 23 "));
  CHECK(contains(r.out, "(1,2,1) raw=16 merged=8 verified\n"));

  r = run({"stabilizer-search", "--tensor", "builtin:classical2", "--family", "signed-perm"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "candidates=512 "));
}
