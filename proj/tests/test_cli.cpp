#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "psr/examples.hpp"
#include "psr/json_io.hpp"

using namespace psr;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "psr_cli_out.txt";
  const std::string cmd = std::string(PSR_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {rc == 0 ? 0 : 1, ss.str()};
}

fs::path write_poly(const StandardFormPoly& sf, const std::string& name) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << standard_form_to_json(sf).dump(2) << "\n";
  return p;
}

}  // namespace

TEST_CASE("polynomial JSON round trip") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const int N = 2 + trial % 4;
    const CubicForm h = testing::random_cubic(N, rng);
    const CubicForm back = parse_polynomial(polynomial_to_json(h));
    REQUIRE(back.dim() == N);
    for (std::size_t i = 0; i < h.raw().size(); ++i) CHECK(back.raw()[i] == h.raw()[i]);
  }
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS((void)parse_polynomial(Json{{"n", 2}}), SchemaError);
  Json bad = {{"n", 2},
              {"terms", Json::array({Json{{"monomial", {1, 1, 0}}, {"coeff", 1.0}}})}};
  CHECK_NOTHROW((void)parse_polynomial(
      Json{{"n", 2}, {"terms", Json::array({Json{{"monomial", {1, 1, 1}}, {"coeff", 1.0}}})}}));
  CHECK_THROWS_AS((void)parse_polynomial(bad), SchemaError);  // exponents sum to 2
  Json neg = {{"n", 1}, {"terms", Json::array({Json{{"monomial", {4, -1}}, {"coeff", 1.0}}})}};
  CHECK_THROWS_AS((void)parse_polynomial(neg), SchemaError);
}

TEST_CASE("check command") {
  const fs::path flat = write_poly(StandardFormPoly(2), "psr_flat.json");
  auto r = run_cli("check " + flat.string());
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.output);
  CHECK(j.at("status") == "CLOSED_REGULAR");
  CHECK(j.at("max_value").get<double>() == 0.0);

  const fs::path mot = write_poly(examples::motivating(), "psr_mot.json");
  r = run_cli("check " + mot.string());
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.output).at("status") == "CLOSED_SINGULAR_AT_INFINITY");
}

TEST_CASE("registry commands") {
  auto r = run_cli("examples motivating --t 0.8660254037844386");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.output);
  // coefficient of y z^2 in the printed family is -2t/3
  const CubicForm p = parse_polynomial(j.at("p3"));
  CHECK(p.coeff(1, 1, 2) ==
        doctest::Approx(-2.0 * 0.8660254037844386 / 3.0).epsilon(1e-9));

  r = run_cli("examples ker01 --n 3");
  REQUIRE(r.exit_code == 0);
  const fs::path k = fs::temp_directory_path() / "psr_ker01.json";
  {
    std::ofstream out(k);
    out << r.output;
  }
  r = run_cli("check " + k.string());
  CHECK(Json::parse(r.output).at("status") == "CLOSED_SINGULAR_AT_INFINITY");

  r = run_cli("examples sqrt2_family --b 0.2");
  REQUIRE(r.exit_code == 0);
  const fs::path s = fs::temp_directory_path() / "psr_sqrt2.json";
  {
    std::ofstream out(s);
    out << r.output;
  }
  r = run_cli("check " + s.string());
  const std::string status = Json::parse(r.output).at("status");
  CHECK(status.substr(0, 6) == "CLOSED");

  r = run_cli("examples no_such_name");
  CHECK(r.exit_code != 0);
  CHECK(Json::parse(r.output).contains("error"));
}

TEST_CASE("pipeline commands") {
  const fs::path mot = write_poly(examples::motivating(), "psr_mot2.json");

  auto r = run_cli("evolve " + mot.string() + " --dir 1,0 --t 0.5,1.0");
  REQUIRE(r.exit_code == 0);
  const Json ev = Json::parse(r.output);
  CHECK(ev.at("samples").size() == 2);
  CHECK(ev.at("horizon").get<double>() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

  r = run_cli("limit " + mot.string() + " --dir -1,0");
  REQUIRE(r.exit_code == 0);
  const Json lim = Json::parse(r.output);
  CHECK(lim.at("error_estimate").get<double>() <= 1e-4);
  const fs::path lp = fs::temp_directory_path() / "psr_limit.json";
  {
    std::ofstream out(lp);
    out << lim.at("limit_p3").dump();
  }
  r = run_cli("classify " + lp.string());
  REQUIRE(r.exit_code == 0);
  CHECK(Json::parse(r.output).at("variant") == "DIM2_A");

  r = run_cli("symmetry-dim " + lp.string());
  REQUIRE(r.exit_code == 0);
  CHECK(std::stoi(r.output) >= 1);

  r = run_cli("standard-form " + mot.string() + " --point 1,0,0");
  REQUIRE(r.exit_code == 0);
  CHECK(Json::parse(r.output).contains("A"));

  r = run_cli("dom-plot " + mot.string() + " --resolution 16");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.substr(0, 12) == "theta,radius");

  r = run_cli("metric " + mot.string() + " --point 0.1,0.2");
  REQUIRE(r.exit_code == 0);
  CHECK(Json::parse(r.output).contains("g"));
}

TEST_CASE("determinism") {
  std::mt19937_64 rng(62);
  CubicForm p3 = testing::random_cubic(3, rng);
  p3 *= 0.3 / p3.max_abs_coeff();
  const fs::path f = write_poly(StandardFormPoly(3, p3), "psr_det.json");
  const auto a = run_cli("check " + f.string() + " --seed 99");
  const auto b = run_cli("check " + f.string() + " --seed 99");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("error surfaces as structured JSON") {
  const fs::path bad = fs::temp_directory_path() / "psr_bad.json";
  {
    std::ofstream out(bad);
    out << "{\"n\": 2, \"terms\": [{\"monomial\": [2, 1, 0], \"coeff\": 0.5}]}\n";
  }
  // not in standard form: x^2 y coefficient present
  const auto r = run_cli("check " + bad.string());
  CHECK(r.exit_code != 0);
  const Json j = Json::parse(r.output);
  CHECK(j.at("error") == "NotStandardForm");

  const auto r2 = run_cli("check /no/such/file.json");
  CHECK(r2.exit_code != 0);
  CHECK(Json::parse(r2.output).at("error") == "ParseError");
}
