// End-to-end tests of the hk binary: exit codes, output formats, manifests,
// and determinism.  The binary path is injected by the build as HK_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const std::string out_file = "cli_stdout.tmp";
  const std::string cmd = std::string(HK_BIN) + " " + args + " > " + out_file + " 2> cli_stderr.tmp";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_file);
  return r;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("space describe --preset nosuch").code == 2);
  CHECK(run("space describe").code == 2);                       // no space given
  CHECK(run("nonsense").code == 2);                             // unknown command
  CHECK(run("fourier inverse --preset s3").code == 2);          // missing --in
  CHECK(run("wave run --preset s3 --method bogus").code == 2);  // bad enum value
}

TEST_CASE("space describe reports the preset geometry") {
  auto r = run("space describe --preset s5 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"dim_space\": 5") != std::string::npos);
  CHECK(r.out.find("\"m\": 2") != std::string::npos);
  CHECK(r.out.find("\"rank\": 1") != std::string::npos);
}

TEST_CASE("specfunc eval matches the cos(pi/3) oracle point") {
  auto r = run("specfunc eval --preset s3 --mu 1 --theta 1.0471975512 --format json");
  CHECK(r.code == 0);
  const auto pos = r.out.find("\"psi_re\": ");
  REQUIRE(pos != std::string::npos);
  const double psi = std::strtod(r.out.c_str() + pos + 10, nullptr);
  CHECK(psi == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("fourier forward is deterministic and writes a manifest") {
  const std::string flags =
      "fourier forward --preset s3 --grid 256 --cutoff 40 --epsilon 0.4 --out fwd_a.csv";
  CHECK(run(flags).code == 0);
  CHECK(run("fourier forward --preset s3 --grid 256 --cutoff 40 --epsilon 0.4 --out fwd_b.csv")
            .code == 0);
  const std::string a = slurp("fwd_a.csv"), b = slurp("fwd_b.csv");
  CHECK(!a.empty());
  CHECK(a == b);  // byte-identical reruns
  const std::string man = slurp("fwd_a.csv.manifest.json");
  CHECK(man.find("\"command\": \"fourier forward\"") != std::string::npos);
  CHECK(man.find("\"config_hash\"") != std::string::npos);
  CHECK(man.find("fwd_a.csv") != std::string::npos);
}

TEST_CASE("fourier forward/inverse roundtrip through files") {
  CHECK(run("fourier forward --preset s3 --grid 256 --cutoff 60 --epsilon 0.4 --format json "
            "--out coeffs.json")
            .code == 0);
  auto r = run("fourier inverse --preset s3 --grid 256 --in coeffs.json --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("theta_0,dist,re,im", 0) == 0);  // header row
  // the synthesized bump peaks near 1 at the node closest to the origin
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  double best_dist = 1e9, best_re = 0.0;
  while (std::getline(ss, line)) {
    double th, d, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &th, &d, &re, &im) == 4 && d < best_dist) {
      best_dist = d;
      best_re = re;
    }
  }
  CHECK(best_re == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("fourier extend emits the requested lambda rows") {
  auto r = run("fourier extend --preset s3 --grid 256 --epsilon 0.4 --lambda 3.0,0.0 "
               "--lambda 0.5,1.5");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("lambda_re_0,lambda_im_0,fhat_re,fhat_im", 0) == 0);
  int rows = 0;
  for (char c : r.out)
    if (c == '\n') ++rows;
  CHECK(rows == 3);
}

TEST_CASE("wave huygens on s3 passes and emits the leakage report") {
  auto r = run("wave huygens --preset s3 --grid 512 --cutoff 250 --epsilon 0.5 --t-steps 4 "
               "--format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
  CHECK(r.out.find("\"L_cone\"") != std::string::npos);
  CHECK(r.out.find("\"L_shell\"") != std::string::npos);
}

TEST_CASE("selftest --only runs a single identifier") {
  auto r = run("selftest --only DIM-INT");
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] DIM-INT") != std::string::npos);
  CHECK(r.out.find("SPH-ORACLE") == std::string::npos);
}

TEST_CASE("fault injection makes SPH-ORACLE fail") {
  auto r = run("selftest --only SPH-ORACLE --corrupt-normalization");
  CHECK(r.code == 1);
  CHECK(r.out.find("[FAIL] SPH-ORACLE") != std::string::npos);
}
