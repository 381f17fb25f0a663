#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "unitri/census.hpp"

using nlohmann::json;

namespace {

std::string cli_binary() {
  const char* env = std::getenv("UNITRI_BIN");
  REQUIRE_MESSAGE(env != nullptr, "UNITRI_BIN must point at the CLI binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("census json round trips") {
  for (const std::string basis : {"q", "q-1"}) {
    RunResult r = run_cli("census --n 6 --e 2 --basis " + basis + " --eval 2 --eval 5");
    REQUIRE(r.exit_code == 0);
    json obj = json::parse(r.output);
    CHECK(obj["n"] == 6);
    CHECK(obj["e"] == 2);
    CHECK(obj["basis"] == basis);
    // Re-evaluating the printed coefficients reproduces the evaluations.
    for (const auto& [key, value] : obj["evaluations"].items()) {
      const long long q = std::stoll(key);
      const long long base = basis == "q" ? q : q - 1;
      long long acc = 0;
      const auto& coeffs = obj["coefficients"];
      for (size_t k = coeffs.size(); k-- > 0;)
        acc = acc * base + coeffs[k].get<long long>();
      CHECK(acc == value.get<long long>());
    }
  }
}

TEST_CASE("census --e all emits one object per exponent") {
  RunResult r = run_cli("census --n 5 --e all --eval 2");
  REQUIRE(r.exit_code == 0);
  json arr = json::parse(r.output);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 4);
  const uint64_t expected[4] = {16, 20, 18, 6};
  for (int e = 0; e < 4; ++e) {
    CHECK(arr[e]["e"] == e);
    CHECK(arr[e]["evaluations"]["2"] == expected[e]);
  }
}

TEST_CASE("verify exit codes") {
  CHECK(run_cli("verify --n 4 --p 2 --no-cache").exit_code == 0);
  RunResult json_run = run_cli("verify --n 3 --p 5 --no-cache --format json");
  CHECK(json_run.exit_code == 0);
  json obj = json::parse(json_run.output);
  CHECK(obj["status"] == "pass");
  CHECK(obj["entries"].size() == 2);  // e = 0, 1
  CHECK(obj["entries"][0]["formula"] == 25);
  CHECK(obj["entries"][1]["formula"] == 4);

  // Resource guard: graceful skip with exit code 3.
  RunResult big = run_cli("verify --n 8 --p 3 --no-cache");
  CHECK(big.exit_code == 3);
  CHECK(big.output.find("skipped") != std::string::npos);

  // Usage errors: exit code 2.
  CHECK(run_cli("census --n 5 --e 9").exit_code == 2);
  CHECK(run_cli("census").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("orbits and pattern output") {
  RunResult orbits = run_cli("orbits --s 2 --t 1 --p 2");
  CHECK(orbits.exit_code == 0);
  CHECK(orbits.output.find("3 orbits") != std::string::npos);
  CHECK(orbits.output.find("1@(2,1)") != std::string::npos);

  RunResult pat = run_cli("pattern --kind Q --n 5 --i 2 --j 4 --format json");
  CHECK(pat.exit_code == 0);
  json pj = json::parse(pat.output);
  CHECK(pj["linear_character_exponent"] == 5);
  CHECK(pj["order_exponent"] == 7);
}

TEST_CASE("reduce on a matrix file") {
  const std::string path = "cli_reduce_input.txt";
  {
    std::ofstream out(path);
    out << "3 2 3\n0 0\n0 0\n0 0\n";
  }
  RunResult zero = run_cli("reduce --matrix " + path + " --format json");
  CHECK(zero.exit_code == 0);
  json obj = json::parse(zero.output);
  CHECK(obj["verified"] == true);
  CHECK(obj["standard_form"] == "0");
  CHECK(obj["Q"] == json::parse("[[0,0],[0,0],[0,0]]"));
  CHECK(obj["A"] == json::parse("[[1,0,0],[0,1,0],[0,0,1]]"));
  std::remove(path.c_str());

  {
    std::ofstream out("cli_reduce_bad.txt");
    out << "2 2 2\n1 0\n";
  }
  CHECK(run_cli("reduce --matrix cli_reduce_bad.txt").exit_code == 2);
  std::remove("cli_reduce_bad.txt");
}
