#include <doctest.h>

#include "nsforge/cli.hpp"
#include "nsforge/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nsforge;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "nsforge");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("nsforge_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

} // namespace

TEST_CASE("cli ns and pi1") {
  auto r = run({"ns", "--catalog", "PGL2", "--component", "1", "--genus", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["ns_rank"] == 1);
  CHECK(j["ns_basis"] == Json::parse("[[2]]"));
  CHECK(j["schema"] == 1);

  r = run({"pi1", "--catalog", "GLn", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "Z\n");
  CHECK(run({"pi1", "--catalog", "PGL4"}).out == "Z/4\n");
  CHECK(run({"pi1", "--catalog", "SO5", "--verify"}).out == "Z/2\nverify ok\n");

  r = run({"report", "--catalog", "SL2", "--component", "0", "--genus", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json rep = Json::parse(r.out);
  CHECK(rep["continuous_part"] == "0");
  CHECK(rep["ns_basis"] == Json::parse("[[1]]"));
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"ns", "--catalog", "XY7"}).code == cli::kUsage);
  CHECK(run({"ns", "--catalog", "GL2", "--component", "1,2"}).code == cli::kUsage);
  CHECK(run({"ns", "--catalog", "GL2", "--format", "yaml"}).code == cli::kUsage);
  CHECK(run({"ns", "--catalog", "GL2", "--genus", "0", "--end-ring", "zero"}).code == cli::kOk);
  CHECK(run({"ns", "--catalog", "GL2", "--genus", "1", "--end-ring", "zero"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("cli json is deterministic and round-trips") {
  const std::vector<std::string> args = {"report", "--catalog", "GL2xPGL2", "--component", "1,1", "--format", "json"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(io::dump(j) == a.out);
  const IntMatrix basis = io::matrix_from_json(j["ns_basis"]);
  CHECK(io::to_json(basis) == j["ns_basis"]);
  CHECK(j["component"].size() == 2);
}

TEST_CASE("cli descriptors") {
  const auto desc = temp_file("gl2.json", R"({"schema": 1, "name": "myGL2", "n": 2,
      "roots": [[1, -1]], "coroots": [[1, -1]]})");
  auto r = run({"ns", "--descriptor", desc, "--component", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["ns_rank"] == 3);
  CHECK(Json::parse(r.out)["group"] == "myGL2");

  const auto prod = temp_file("prod.json", R"({"schema": 1, "factors": [{"catalog": "PGL2"}, {"catalog": "GL", "n": 2}]})");
  r = run({"rank", "--descriptor", prod, "--component", "1,1", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["ns_rank"] == Json::parse(r.out)["rank_formula"]);

  const auto bad = temp_file("bad.json", R"({"schema": 1, "catalog": "GL2", "colour": "red"})");
  r = run({"ns", "--descriptor", bad});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("colour") != std::string::npos);
  const auto noschema = temp_file("noschema.json", R"({"catalog": "GL2"})");
  CHECK(run({"ns", "--descriptor", noschema}).code == cli::kUsage);

  const auto ring = temp_file("ring.json", R"({"schema": 1, "involution": [[1, 0], [0, -1]], "unit": [1, 0]})");
  r = run({"rank", "--catalog", "GL2", "--genus", "1", "--end-ring", ring, "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["ns_rank"] == 3);
}

TEST_CASE("cli pullback and dynkin") {
  const auto det = temp_file("det.json", R"({"schema": 1, "cochar": [[1, 1, 1]]})");
  auto r = run({"pullback", "--from", "T1", "--to", "GL3", "--map", det, "--component", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["matrix"] == Json::parse("[[3, 0], [0, 9], [0, 0]]"));

  const auto bad = temp_file("bad_hom.json", R"({"schema": 1, "cochar": [[1]]})");
  CHECK(run({"pullback", "--from", "PGL2", "--to", "SL2", "--map", bad}).code == cli::kUsage);

  CHECK(run({"dynkin", "--group", "SL2", "--weights", "3,1,-1,-3"}).out == "10\n");
  CHECK(run({"dynkin", "--group", "SL2", "--weights", "2,0,-2"}).out == "4\n");
  CHECK(run({"dynkin", "--group", "SL3", "--weights", "1,0;-1,1;0,-1"}).out == "1\n");
  CHECK(run({"dynkin", "--group", "SL2", "--weights", "1,1"}).code == cli::kUsage);
  const auto sym2 = temp_file("sym2.json", R"({"schema": 1, "cochar": [[2], [2]]})");
  CHECK(run({"dynkin", "--from", "SL3", "--to", "SL2", "--map", sym2}).out == "4\n");
}

TEST_CASE("cli batch and verify") {
  auto r = run({"report", "--all", "--genus", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  const auto names = standard_catalog();
  // order follows the catalog
  std::size_t pos = 0;
  for (const auto& rep : j["reports"]) {
    while (pos < names.size() && rep["group"] != names[pos]) ++pos;
    CHECK(pos < names.size());
  }
  r = run({"verify", "--catalog", "PGL2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["mismatches"] == 0);

  r = run({"catalog", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["standard"].size() == names.size());

  const auto out = (std::filesystem::temp_directory_path() / "nsforge_test_out.txt").string();
  r = run({"rank", "--catalog", "GL2", "--out", out});
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "rank 3 (formula 3)");
}
