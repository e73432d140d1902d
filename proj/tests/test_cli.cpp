// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line surface: every command documented
// in the README runs here with exit code 0, outputs spot-checked, error
// paths mapped to the right exit codes, and reports byte-identical across
// worker counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(RWG_CLI_PATH) + " " + args + " > cli_out.tmp 2> cli_err.tmp";
  const int status = std::system(cmd.c_str());
  std::ifstream f("cli_out.tmp");
  std::stringstream ss;
  ss << f.rdbuf();
  return RunResult{WEXITSTATUS(status), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (const char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("documented commands run clean") {
  auto r = run("predict --family matching --dist gaussian --n 100");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 7) == "303.485");

  r = run("ratefn --dist gaussian --eval 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2\n");

  r = run("ratefn --dist laplace --inverse 0.5");
  CHECK(r.exit_code == 0);

  r = run("check-tails --dist steptail --grid 1.5:3.5:1.0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("t,r\n", 0) == 0);
  CHECK(count_lines(r.out) == 4);

  r = run("solve --family hamcycle --dist laplace --n 10 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"weight\":") != std::string::npos);

  r = run("solve --family copy --pattern triangle --dist gaussian --n 12 --seed 5");
  CHECK(r.exit_code == 0);

  r = run("certify --family matching --dist gaussian --n 80 --delta 0.2 --seed 9 --trials 5");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.out) == 6);  // header + 5 rows

  r = run("table --family matching --dist gaussian --n-list 20,40 --trials 20 --seed 2 "
          "--workers 2");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.out) == 3);
}

TEST_CASE("simulate writes the per-trial CSV and a summary") {
  auto r = run("simulate --family tree --dist uniform --n 30 --trials 10 --seed 1 --out sim.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"violations\":{\"finite_n_upper\":0,\"ewn\":0}") != std::string::npos);
  const std::string csv = slurp("sim.csv");
  CHECK(count_lines(csv) == 11);  // header + 10 data rows
  CHECK(csv.rfind("trial,weight,ratio,found_certificate,certified_bound\n", 0) == 0);
  std::remove("sim.csv");
}

TEST_CASE("worker count does not change a byte") {
  auto r1 = run("simulate --family matching --dist gaussian --n 40 --trials 30 --seed 12 "
                "--workers 1 --out w1.csv --json w1.json");
  auto r8 = run("simulate --family matching --dist gaussian --n 40 --trials 30 --seed 12 "
                "--workers 8 --out w8.csv --json w8.json");
  CHECK(r1.exit_code == 0);
  CHECK(r8.exit_code == 0);
  CHECK(r1.out == r8.out);
  CHECK(slurp("w1.csv") == slurp("w8.csv"));
  CHECK(slurp("w1.json") == slurp("w8.json"));
  for (const char* p : {"w1.csv", "w8.csv", "w1.json", "w8.json"}) std::remove(p);
}

TEST_CASE("kernel backend flag") {
  auto rs = run("--kernels scalar solve --family matching --dist gaussian --n 25 --seed 3");
  CHECK(rs.exit_code == 0);
  auto rd = run("solve --family matching --dist gaussian --n 25 --seed 3");
  CHECK(rd.exit_code == 0);
  CHECK(rs.out == rd.out);
}

TEST_CASE("exit codes") {
  CHECK(run("bogus-subcommand").exit_code == 1);
  CHECK(run("predict --family matching --dist gaussian").exit_code == 1);  // missing --n
  CHECK(run("predict --family matching --dist cauchy --n 10").exit_code == 2);
  CHECK(run("predict --family copy --dist gaussian --n 10").exit_code == 2);  // no pattern
  CHECK(run("solve --family hamcycle --dist gaussian --n 64 --seed 1").exit_code == 2);
  CHECK(run("certify --family matching --dist gaussian --n 10 --delta 1.5 --seed 1 --trials 2")
            .exit_code == 2);
  CHECK(run("--help").exit_code == 0);
  CHECK(run("simulate --help").exit_code == 0);
}
