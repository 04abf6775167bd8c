// End-to-end checks of the command-line tool: spawns the real binary and
// inspects files, stdout and exit codes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

int run(const std::string& args, const std::string& out_file = "") {
  std::string cmd = std::string(PATHSIM_CLI_PATH) + " " + args;
  if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
  else cmd += " >/dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("expect on the single-rotation circuit") {
  write_file("cli_circ.qc", "qubits 1\nh 0\nrp Z t0\n");
  int rc = run("expect --circuit cli_circ.qc --obs X --L 4 --theta 0.3926991 --seed 1 "
               "--out cli_expect.csv");
  CHECK(rc == 0);
  std::string csv = slurp("cli_expect.csv");
  CHECK(csv.rfind("index,value\n0,0.70710675", 0) == 0);
}

TEST_CASE("verify exits zero on a clean build") {
  CHECK(run("verify --max-n 3 --seed 7") == 0);
}

TEST_CASE("sweep-l emits the bound column") {
  int rc = run(
      "sweep-l --gen brickwork:n=3,depth=3,kind=rotation --noise-policy depol1:0.25 "
      "--obs ZII --L 1..3 --draws 30 --seed 3 --gamma-from-noise --out cli_sweep.csv");
  CHECK(rc == 0);
  std::string csv = slurp("cli_sweep.csv");
  CHECK(csv.rfind("L,rms,bound,stderr,draws,seed\n", 0) == 0);
  CHECK(csv.find("\n1,") != std::string::npos);
  CHECK(csv.find(",0.75,") != std::string::npos);       // (1-0.25)^1
  CHECK(csv.find(",0.5625,") != std::string::npos);     // (1-0.25)^2
  CHECK(csv.find(",0.421875,") != std::string::npos);   // (1-0.25)^3
}

TEST_CASE("identical seeds reproduce byte-identical outputs") {
  std::string base =
      "sample --gen brickwork:n=3,depth=2,kind=haar --noise-policy depol2:0.1 --L 1 "
      "--haar-seed 9 --n-samples 40 --seed ";
  CHECK(run(base + "5 --threads 1 --out cli_s1.txt") == 0);
  CHECK(run(base + "5 --threads 2 --out cli_s2.txt") == 0);
  CHECK(run(base + "6 --out cli_s3.txt") == 0);
  CHECK(slurp("cli_s1.txt") == slurp("cli_s2.txt"));
  CHECK(slurp("cli_s1.txt") != slurp("cli_s3.txt"));
  // n lines of bitstrings plus a JSON footer
  std::string s = slurp("cli_s1.txt");
  CHECK(std::count(s.begin(), s.end(), '\n') == 41);
  CHECK(s.find("\"clamp_events\"") != std::string::npos);
}

TEST_CASE("probs dumps distribution and marginals") {
  int rc = run(
      "probs --gen brickwork:n=3,depth=2,kind=haar --L 2 --seed 5 --haar-seed 9 "
      "--marginals 1 --out cli_probs.csv");
  CHECK(rc == 0);
  std::string csv = slurp("cli_probs.csv");
  CHECK(csv.rfind("x,p\n", 0) == 0);
  CHECK(csv.find("marginal:0,") != std::string::npos);
  CHECK(csv.find("marginal:1,") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage, engine and verify failures") {
  CHECK(run("expect --circuit missing.qc --obs X --L 1 --seed 1") == 1);
  write_file("cli_bad.qc", "qubits 2\nbogus 0\n");
  CHECK(run("expect --circuit cli_bad.qc --obs XI --L 1 --seed 1") == 1);
  // a cap of 1 generator cannot hold the two survivors of a single block
  CHECK(run("probs --gen brickwork:n=3,depth=2,kind=haar --L 1 --seed 2 --haar-seed 3 "
            "--cap 1 --mode bidirectional") == 2);
}

TEST_CASE("dump-adjoint emits a 15x15 orthogonal matrix") {
  CHECK(run("dump-adjoint --haar-seed 4 --out cli_adj.csv") == 0);
  std::string csv = slurp("cli_adj.csv");
  int rows = 0;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 14);
  }
  CHECK(rows == 15);
}
