#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line tool. The test runner exports
// DISKMEAN_BIN (set by CTest); without it the cases are skipped so the
// library tests stay usable standalone.

namespace {

const char* tool_path() { return std::getenv("DISKMEAN_BIN"); }

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(tool_path()) + " " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

#define NEED_TOOL()                                          \
  do {                                                       \
    if (!tool_path()) {                                      \
      MESSAGE("DISKMEAN_BIN not set; skipping CLI checks");  \
      return;                                                \
    }                                                        \
  } while (0)

}  // namespace

TEST_CASE("version flag") {
  NEED_TOOL();
  const auto res = run("--version");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("1.0.0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  NEED_TOOL();
  CHECK(run("").exit_code == 2);
  CHECK(run("zeros --s 0").exit_code == 2);          // missing --m
  CHECK(run("zeros --m 99 --s 0").exit_code == 2);   // invalid parameters
  CHECK(run("verify --m 1 --s 0").exit_code == 2);   // neither --spec nor --field
  CHECK(run("verify --field constant").exit_code == 2);  // no catalog to take m, s from
  CHECK(run("two-radii --catalog /nonexistent.json --r1 1 --r2 1 --R 3").exit_code == 2);
}

TEST_CASE("zeros subcommand writes a parseable, reproducible catalog") {
  NEED_TOOL();
  const std::string p1 = "/tmp/diskmean_test_cat1.json";
  const std::string p2 = "/tmp/diskmean_test_cat2.json";
  const auto r1 = run("zeros --m 1 --s 0 --lambda-max 12 --out " + p1);
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run("zeros --m 1 --s 0 --lambda-max 12 --out " + p2);
  REQUIRE(r2.exit_code == 0);

  const std::string text = slurp(p1);
  CHECK(text == slurp(p2));  // byte-identical reruns

  const auto j = nlohmann::json::parse(text);
  CHECK(j["schema"].get<int>() == 1);
  CHECK(j["m"].get<int>() == 1);
  CHECK(j["origin_multiplicity"].get<int>() == 2);
  CHECK(j["zeros"].is_array());
  CHECK(j["zeros"].size() == 1);  // only the first zero sits inside 12
  // Every artifact embeds its provenance.
  CHECK(j.contains("tool_version"));
  CHECK(j.contains("config"));
  CHECK(j["config"]["lambda_max"].get<double>() == 12.0);

  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("verify subcommand distinguishes solutions from non-solutions") {
  NEED_TOOL();
  // A constant solves the equation.
  const std::string csv = "/tmp/diskmean_test_verify.csv";
  const auto ok =
      run("verify --field constant --m 2 --s 1 --r 0.8 --samples 6 --out " + csv);
  CHECK(ok.exit_code == 0);

  const std::string text = slurp(csv);
  CHECK(text.find("# schema=") != std::string::npos);
  CHECK(text.find("# tool_version=") != std::string::npos);
  CHECK(text.find("# config=") != std::string::npos);
  CHECK(text.find("z_re,z_im,res_re,res_im,abs_res,quad_err") != std::string::npos);

  // A generic plane wave does not.
  const auto bad = run("verify --field planewave:3 --m 2 --s 1 --r 0.8 --samples 6");
  CHECK(bad.exit_code == 1);

  std::remove(csv.c_str());
}

TEST_CASE("cylinder@ fields verify against the catalog's own equation") {
  NEED_TOOL();
  const std::string cat = "/tmp/diskmean_test_cyl_cat.json";
  REQUIRE(run("zeros --m 2 --s 1 --lambda-max 16 --out " + cat).exit_code == 0);

  // m and s come from the catalog, so the mode is an exact solution.
  CHECK(run("verify --field cylinder@0 --catalog " + cat + " --samples 6").exit_code == 0);
  // An explicit mismatched equation still loses.
  const auto bad =
      run("verify --field cylinder@0 --catalog " + cat + " --m 1 --s 0 --samples 6");
  CHECK(bad.exit_code == 1);

  std::remove(cat.c_str());
}

TEST_CASE("oracle subcommand sweeps the residual identity") {
  NEED_TOOL();
  const std::string out = "/tmp/diskmean_test_oracle.json";
  const auto res = run("oracle --m 1 --s 0 --sweep 6 --seed 7 --out " + out);
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["pass"].get<bool>());
  CHECK(j["normalization"].get<std::string>() == "prediction");
  CHECK(j["max_deviation"].get<double>() <= j["config"]["tol"].get<double>());
  CHECK(j["config"]["sweep"].get<int>() == 6);
  std::remove(out.c_str());
}

TEST_CASE("synth and two-radii pipelines run end to end") {
  NEED_TOOL();
  const std::string cat = "/tmp/diskmean_test_cat21.json";
  const std::string spec = "/tmp/diskmean_test_spec.json";
  REQUIRE(run("zeros --m 2 --s 1 --lambda-max 12 --out " + cat).exit_code == 0);

  const auto synth = run("synth --catalog " + cat +
                         " --harmonics 2 --modes 1 --seed 3 --out " + spec);
  REQUIRE(synth.exit_code == 0);
  const auto js = nlohmann::json::parse(slurp(spec));
  CHECK(js["schema"].get<int>() == 1);
  CHECK(js["m"].get<int>() == 2);

  const auto verify = run("verify --spec " + spec + " --samples 6");
  CHECK(verify.exit_code == 0);

  const auto tr = run("two-radii --catalog " + cat + " --r1 1 --r2 1 --R 3");
  CHECK(tr.exit_code == 0);
  CHECK(tr.out.find("counterexample_constructed") != std::string::npos);

  const auto far = run("two-radii --catalog " + cat + " --r1 1 --r2 1.4142135623730951 --R 3");
  CHECK(far.exit_code == 0);
  CHECK(far.out.find("injective") != std::string::npos);

  std::remove(cat.c_str());
  std::remove(spec.c_str());
}
