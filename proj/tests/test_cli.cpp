// End-to-end tests of the command-line tool: golden outputs, exit-code
// contract, and determinism of emitted files.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "biortho/catalog.hpp"
#include "biortho/json_io.hpp"

#ifndef BIORTHO_CLI_PATH
#error "BIORTHO_CLI_PATH must point at the built binary"
#endif

namespace {

namespace fs = std::filesystem;
using biortho::json;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "biortho_cli_tests";
  fs::create_directories(dir);
  fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(BIORTHO_CLI_PATH) + " " + args + " >" + out.string() +
                    " 2>" + err.string();
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "biortho_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << content;
  return p;
}

}  // namespace

TEST_CASE("generate: latex output reproduces the published table") {
  CliResult r = run_cli("generate --family krall-sheffer-intriguing --degree 3 --format latex");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\\mathbb{Q}_0^t &=& \\left(1\\right)") != std::string::npos);
  CHECK(r.out.find("-x, -y") != std::string::npos);
  CHECK(r.out.find("x^{2} - 6y, 2xy - 2, y^{2}") != std::string::npos);
  CHECK(r.out.find("-x^{3} + 18xy - 12") != std::string::npos);
}

TEST_CASE("generate: degree zero") {
  CliResult r = run_cli("generate --family ball --mu 1/2 --degree 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "Q_0^t = (1)\n");
}

TEST_CASE("generate: simplex JSON output re-parses to the expected vector") {
  CliResult r = run_cli(
      "generate --family simplex --alpha 0 --beta 0 --gamma 0 --degree 1 --format json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["form_used"] == "diagonal");
  auto q1 = j["degrees"][1]["q"];
  using biortho::BiPoly;
  const BiPoly X = BiPoly::x(), Y = BiPoly::y();
  CHECK(biortho::poly_from_json(q1[0]) == BiPoly(1) - 2 * X - Y);
  CHECK(biortho::poly_from_json(q1[1]) == BiPoly(1) - X - 2 * Y);
}

TEST_CASE("kron subcommand emits the polynomial matrix format") {
  CliResult r = run_cli("kron --n 2 --matrix \"[[1,2],[3,4]]\"");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["rows"] == 3);
  biortho::PolyMatrix m = biortho::polymatrix_from_json(j);
  long expected[3][3] = {{1, 4, 4}, {3, 10, 8}, {9, 24, 16}};
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c)
      CHECK(m.at(i, c) == biortho::BiPoly(biortho::rat(expected[i][c])));
}

TEST_CASE("kron variants agree through the CLI") {
  CliResult a = run_cli("kron --n 4 --matrix \"[[1,2],[3,4]]\" --variant explicit");
  CliResult b = run_cli("kron --n 4 --matrix \"[[1,2],[3,4]]\" --variant rec2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("moments subcommand tabulates the intriguing family") {
  CliResult r = run_cli("moments --family krall-sheffer-intriguing --cap 4");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["cap"] == 4);
  bool mu11 = false, mu30 = false;
  for (const auto& row : j["moments"]) {
    if (row[0] == 1 && row[1] == 1) mu11 = (row[2] == "1");
    if (row[0] == 3 && row[1] == 0) mu30 = (row[2] == "6");
  }
  CHECK(mu11);
  CHECK(mu30);
}

TEST_CASE("family list enumerates the catalog") {
  CliResult r = run_cli("family list");
  CHECK(r.exit_code == 0);
  for (const char* name : {"krall-sheffer-intriguing", "ball", "simplex",
                           "tensor-hermite-hermite", "tensor-laguerre-jacobi",
                           "tensor-bessel-bessel"})
    CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.out.find("mu > -1/2") != std::string::npos);

  CliResult rj = run_cli("family list --format json");
  REQUIRE(rj.exit_code == 0);
  json j = json::parse(rj.out);
  CHECK(j.size() == 6);
  CHECK(j[0].contains("document"));
}

TEST_CASE("verify: all-pass run exits zero") {
  CliResult r = run_cli("verify --family krall-sheffer-intriguing --degree 3 --format json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["all_pass"] == true);
  CHECK(j["compatibility_original"] == true);
}

TEST_CASE("verify: ball reports the failed original compatibility condition and still passes") {
  CliResult r = run_cli("verify --family ball --mu 3/2 --degree 2 --format json");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["compatibility_original"] == false);
  CHECK(j["compatibility_diagonal"] == true);
  CHECK(j["form_used"] == "diagonal");
  CHECK(j["all_pass"] == true);
}

TEST_CASE("verify: corrupted family file fails with the math exit code") {
  using namespace biortho;
  FamilySpec fam = catalog_load("krall-sheffer-intriguing");
  fam.psi.at(0, 0) = fam.psi.at(0, 0) + BiPoly(1);  // flip one coefficient
  fs::path p = write_temp("corrupted.json", to_json(fam).dump());
  CliResult r = run_cli("verify --family-file " + p.string() + " --degree 2 --format json");
  CHECK(r.exit_code == 2);
  json j = json::parse(r.out);
  CHECK(j["all_pass"] == false);
  CHECK(j["symmetry_factor"] == false);
}

TEST_CASE("config errors exit with code 3") {
  CHECK(run_cli("generate --family no-such --degree 1").exit_code == 3);
  CHECK(run_cli("generate --family ball --mu 0.5 --degree 1").exit_code == 3);  // decimal
  CHECK(run_cli("generate --family ball --alpha 1 --degree 1").exit_code == 3);
  CHECK(run_cli("verify --family ball --degree 3 --cap 2").exit_code == 3);
  CHECK(run_cli("kron --n 2 --matrix \"[[1,2],[3]]\"").exit_code == 3);
  CliResult r = run_cli("generate --family no-such --degree 1");
  json j = json::parse(r.err);
  CHECK(j["error"]["type"] == "unknown-family");
}

TEST_CASE("weight-route failure exits with the math code") {
  CliResult r = run_cli("generate --family tensor-bessel-bessel --degree 1");
  CHECK(r.exit_code == 2);
  json j = json::parse(r.err);
  CHECK(j["error"]["type"] == "weight-route");
}

TEST_CASE("identical configuration produces byte-identical files") {
  fs::path dir = fs::temp_directory_path() / "biortho_cli_tests";
  fs::create_directories(dir);
  fs::path a = dir / "det_a.json";
  fs::path b = dir / "det_b.json";
  std::string args = "verify --family simplex --alpha 1 --beta 0 --gamma 1 --degree 2 "
                     "--format json --out ";
  CHECK(run_cli(args + a.string()).exit_code == 0);
  CHECK(run_cli(args + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("generate accepts user family files") {
  using namespace biortho;
  fs::path p = write_temp("ball_copy.json", to_json(catalog_load("ball")).dump());
  CliResult r = run_cli("generate --family-file " + p.string() + " --degree 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Q_1^t = (-2x, -2y)") != std::string::npos);
}
