#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests of the qd3 binary. The path is provided by CTest through
// the QD3_CLI environment variable.

namespace {

std::string cli() {
  const char* p = std::getenv("QD3_CLI");
  REQUIRE_MESSAGE(p != nullptr, "QD3_CLI must point at the qd3 binary");
  return p;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const char* kValidConfig = R"({
  "eta": [0.1, 0.0], "n_sites": 1, "theta": [[0.91, 0.0]],
  "left":  {"c": 0.31, "c1": 0.57, "c2": 0.23},
  "right": {"c": 0.17, "c1": 0.83, "c2": -0.41},
  "seed": 1
})";

}  // namespace

TEST_CASE("exit 0 on passing verification") {
  CHECK(run("verify --scope local") == 0);
}

TEST_CASE("exit 2 on usage and config errors") {
  CHECK(run("") == 2);             // missing subcommand
  CHECK(run("frobnicate") == 2);   // unknown subcommand
  CHECK(run("verify --scope bogus") == 2);

  write_file("cli_bad_syntax.json", "{ not json ");
  CHECK(run("verify --scope local --config cli_bad_syntax.json") == 2);

  write_file("cli_bad_eta.json",
             R"({"eta":[0.0,0.0],"n_sites":1,"theta":[[0.9,0.0]],
                 "left":{"c":0.31,"c1":0.57,"c2":0.23},
                 "right":{"c":0.17,"c1":0.83,"c2":-0.41}})");
  CHECK(run("verify --scope local --config cli_bad_eta.json") == 2);

  // Bethe counting-rule violation
  write_file("cli_ok.json", kValidConfig);
  CHECK(run("bae --config cli_ok.json --L1 1 --L2 1 --L3 0") == 2);
}

TEST_CASE("spectrum subcommand produces a report") {
  write_file("cli_ok.json", kValidConfig);
  CHECK(run("spectrum --config cli_ok.json --out cli_spec.json") == 0);
  const std::string rep = slurp("cli_spec.json");
  CHECK(rep.find("\"schema\": \"qd3/1\"") != std::string::npos);
  CHECK(rep.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("seed replay is byte identical") {
  write_file("cli_ok.json", kValidConfig);
  CHECK(run("verify --scope local --config cli_ok.json --seed 7 --out cli_rep1.json") == 0);
  CHECK(run("verify --scope local --config cli_ok.json --seed 7 --out cli_rep2.json") == 0);
  const std::string a = slurp("cli_rep1.json");
  const std::string b = slurp("cli_rep2.json");
  CHECK(!a.empty());
  CHECK(a == b);

  // a different seed must change the sampled points (and hence the report)
  CHECK(run("verify --scope local --config cli_ok.json --seed 8 --out cli_rep3.json") == 0);
  CHECK(a != slurp("cli_rep3.json"));
}

TEST_CASE("environment seed override") {
  write_file("cli_ok.json", kValidConfig);
  const std::string cmd_env = "QD3_SEED=7 " + cli() +
                              " verify --scope local --config cli_ok.json --out cli_rep_env.json"
                              " >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd_env.c_str())) == 0);
  CHECK(run("verify --scope local --config cli_ok.json --seed 7 --out cli_rep_seed.json") == 0);
  CHECK(slurp("cli_rep_env.json") == slurp("cli_rep_seed.json"));
}
