#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("CARSYM_CLI");
  REQUIRE(cli != nullptr);
  std::string command = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("normal-order golden outputs") {
  CHECK(run_cli("normal-order \"a(0)*ad(0)\"").output == "1 - ad(0)*a(0)\n");
  CHECK(run_cli("normal-order \"ad(1)*ad(0)\"").output == "-ad(0)*ad(1)\n");
  // idempotent: re-running on the output reproduces it
  RunResult first = run_cli("normal-order \"a(0)*ad(0)*a(1)\"");
  std::string rendered = first.output.substr(0, first.output.size() - 1);
  CHECK(run_cli("normal-order \"" + rendered + "\"").output == first.output);
  CHECK(run_cli("normal-order \"a(1/3)\"").exit_code == 1);
}

TEST_CASE("evaluate golden outputs") {
  RunResult r = run_cli("evaluate --state product:0.25 --expr \"ad(0)*a(0)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "{\"re\":0.75,\"im\":0.0}\n");
  CHECK(run_cli("evaluate --state vacuum --expr \"ad(0)*a(0)\"").output == "{\"re\":0.0,\"im\":0.0}\n");
  RunResult toe = run_cli(
      "evaluate --state '{\"type\":\"toeplitz\",\"q\":{\"0\":0.5,\"1\":0.25}}' --expr \"ad(0)*a(1)\"");
  CHECK(toe.output == "{\"re\":0.25,\"im\":0.0}\n");
  CHECK(run_cli("evaluate --state product:0.5 --expr \"ad(0)*a(0)\" --format text").output == "0.5\n");
}

TEST_CASE("check exit codes") {
  CHECK(run_cli("check --state product:0.25 --symmetry rotatable --degree-cap 3 --window 4 --count 5")
            .exit_code == 0);
  RunResult toe = run_cli(
      "check --state '{\"type\":\"toeplitz\",\"q\":{\"0\":0.5,\"1\":0.25}}' --symmetry spreadable "
      "--degree-cap 2 --window 5");
  CHECK(toe.exit_code == 2);
  auto verdict = nlohmann::json::parse(toe.output);
  CHECK(verdict["verdict"] == "violated");
  CHECK(verdict["witness"]["gap"].get<double>() == 0.25);
  CHECK(run_cli("check --state '{\"type\":\"nope\"}' --symmetry even").exit_code == 1);
  CHECK(run_cli("check --state 'product:0.25'").exit_code == 1);  // missing --symmetry
  RunResult precondition = run_cli(
      "check --state '{\"type\":\"toeplitz\",\"q\":{\"0\":0.5,\"1\":0.25}}' --symmetry spreadable-even");
  CHECK(precondition.exit_code == 3);
}

TEST_CASE("folner-report golden csv") {
  RunResult r = run_cli("folner-report --n 1..3 --m 1");
  CHECK(r.exit_code == 0);
  std::string expected =
      "n,m,F_count,G_count,H_count,K_count,G_ratio,H_bound_2^{m+n}\n"
      "1,1,12,12,8,5,1,4\n"
      "2,1,630,255,205,50,0.40476190476190477,8\n"
      "3,1,80080,15895,14960,935,0.19848901098901098,16\n";
  CHECK(r.output == expected);
  CHECK(run_cli("folner-report --n 0 --m 1").exit_code != 0);
}

TEST_CASE("average") {
  RunResult r = run_cli("average --state product:0.5 --expr \"ad(0)*a(0)\" --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "{\"re\":0.5,\"im\":0.0}\n");
  // beyond the cap an explicit error advises sampling
  RunResult capped = run_cli("average --state product:0.5 --expr \"ad(0)*a(0)\" --n 5");
  CHECK(capped.exit_code == 3);
  RunResult sampled = run_cli("average --state product:0.5 --expr \"ad(0)*a(0)\" --n 5 --sample 100 --seed 1");
  CHECK(sampled.exit_code == 0);
  CHECK(sampled.output == "{\"re\":0.5,\"im\":0.0}\n");
}

TEST_CASE("dyadic-check") {
  RunResult r = run_cli("dyadic-check --state product:0.25 --level 1 --degree-cap 2 --window 3");
  CHECK(r.exit_code == 0);
  auto verdict = nlohmann::json::parse(r.output);
  CHECK(verdict["verdict"] == "holds");
}

TEST_CASE("extremality exit codes") {
  CHECK(run_cli("extremality --state product:0.25 --separation 5 --degree-cap 2 --window 3").exit_code == 0);
  std::string mix = "'{\"type\":\"mixture\",\"parts\":[[0.5,{\"type\":\"product\",\"mu\":0.0}],"
                    "[0.5,{\"type\":\"product\",\"mu\":1.0}]]}'";
  CHECK(run_cli("extremality --state " + mix + " --separation 5 --degree-cap 2 --window 3").exit_code == 2);
}

TEST_CASE("output goes to a file when asked") {
  std::string path = "/tmp/carsym_cli_eval.json";
  std::remove(path.c_str());
  RunResult r = run_cli("evaluate --state product:0.25 --expr \"ad(0)*a(0)\" --output " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(path);
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(contents == "{\"re\":0.75,\"im\":0.0}\n");
  std::remove(path.c_str());
}

TEST_CASE("reports are byte identical across thread counts") {
  std::string base = "folner-report --n 1..2 --m 2";
  RunResult t1 = run_cli(base + " --threads 1");
  RunResult t4 = run_cli(base + " --threads 4");
  CHECK(t1.output == t4.output);
  std::string check_cmd =
      "check --state product:0.25 --symmetry rotatable --degree-cap 3 --window 4 --count 8 --seed 5";
  RunResult c1 = run_cli(check_cmd + " --threads 1");
  RunResult c2 = run_cli(check_cmd + " --threads 4");
  CHECK(c1.output == c2.output);
}
