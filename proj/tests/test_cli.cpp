#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "rankone/detectors.hpp"
#include "rankone/errors.hpp"
#include "rankone/io.hpp"

using namespace rankone;

namespace {

std::string cli_path() {
  const char* p = std::getenv("RANKONE_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return "/tmp/rankone_test_" + name; }

}  // namespace

TEST_CASE("pointset text format round-trips") {
  PointSet P;
  P.d = 2;
  P.points = {{0.1234567890123456, 1.0 / 3}, {0.0, 1.0}};
  P.provenance = "unit test";
  const std::string path = tmp("roundtrip.txt");
  write_pointset_file(path, P, {P.provenance});
  const PointSet Q = read_pointset_file(path);
  CHECK(Q.d == 2);
  REQUIRE(Q.size() == 2);
  CHECK(Q.points == P.points);  // 17 significant digits round-trip doubles
  CHECK(Q.provenance == "unit test");
}

TEST_CASE("malformed pointset files are rejected with diagnostics") {
  const std::string path = tmp("bad.txt");
  {
    std::ofstream os(path);
    os << "2 2\n0.5 0.5\n";
  }
  CHECK_THROWS_AS(read_pointset_file(path), UsageError);
  {
    std::ofstream os(path);
    os << "2 1\n0.5\n";
  }
  CHECK_THROWS_AS(read_pointset_file(path), UsageError);
  {
    std::ofstream os(path);
    os << "garbage\n";
  }
  CHECK_THROWS_AS(read_pointset_file(path), UsageError);
  CHECK_THROWS_AS(read_pointset_file(tmp("missing_file.txt")), ResourceError);
}

TEST_CASE("detector header records the class and parameters") {
  SmoothnessClass cls(1, 1.5, 3);
  const DetectorParams params = detector_params(cls, 0.9);
  const std::string h = detector_header(cls, 0.9, params);
  CHECK(h.find("regime=Moderate") == 0);
  CHECK(h.find("r=1") != std::string::npos);
  CHECK(h.find("M=1.5") != std::string::npos);
  CHECK(h.find("d=3") != std::string::npos);
  CHECK(h.find("eps=0.9") != std::string::npos);
  CHECK(h.find("params=") != std::string::npos);
  CHECK(h.find("d0=0") != std::string::npos);
}

TEST_CASE("detect writes a loadable detector file plus a summary") {
  const std::string out = tmp("detect_summary.csv");
  auto res = run("detect --r 1 --M 1 --d 2 --eps 0.5 --out " + out);
  CHECK(res.exit_code == 0);
  const std::string summary = slurp(out);
  CHECK(summary.find("regime,r,M,d,eps,mode,size,file") == 0);
  CHECK(summary.find("Small,1,1,2,0.5,verified,") != std::string::npos);
  const PointSet P = read_pointset_file(out + ".points");
  CHECK(P.d == 2);
  CHECK(P.provenance.find("regime=Small") == 0);

  auto large = run("detect --r 1 --M 2 --d 2 --eps 0.5 --out " + out);
  CHECK(large.exit_code == 0);
  CHECK(slurp(out).find("Large,1,2,2,0.5,") != std::string::npos);
}

TEST_CASE("missing eps is a usage error with exit code 2") {
  CHECK(run("detect --r 1 --M 1 --d 2").exit_code == 2);
  CHECK(run("approximate --r 1 --M 1 --d 2").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("approximate on the zero function scans the whole detector") {
  auto res = run(
      "approximate --r 1 --M 1 --d 2 --eps 0.25 --trials 1 --function zero");
  CHECK(res.exit_code == 0);
  std::istringstream is(res.out);
  std::string header, row;
  std::getline(is, header);
  CHECK(header ==
        "seed,regime,d,eps,detector_size,m,detector_evals,interp_evals,total,"
        "bound,measured_error,pass");
  std::getline(is, row);
  CHECK(row.find(",Small,2,0.25,") != std::string::npos);
  // total equals detector_size, measured_error is 0, pass
  CHECK(row.find(",0,true") != std::string::npos);
}

TEST_CASE("approximate random trials all pass at the acceptance tuple") {
  auto res = run(
      "approximate --r 1 --M 1 --d 2 --eps 0.25 --trials 25 --seed 11");
  CHECK(res.exit_code == 0);
  int rows = 0;
  std::istringstream is(res.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.rfind(",true") == line.size() - 5);
  }
  CHECK(rows == 25);
}

TEST_CASE("regimes emits grid rows with baseline comparison") {
  auto res = run(
      "regimes --r 1 --M 1 --d 1 --d 2 --d 3 --eps 0.5 --eps 0.25 --eps 0.125 "
      "--mode formula");
  CHECK(res.exit_code == 0);
  std::istringstream is(res.out);
  std::string line;
  std::getline(is, line);
  CHECK(line ==
        "r,M,d,eps,regime,tractability,bound,detector_size,m,cost,baseline,"
        "baseline_saturated");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find(",Small,Polynomial,") != std::string::npos);
  }
  CHECK(rows == 9);
}

TEST_CASE("small-regime bound column grows exactly as d squared") {
  auto res = run("regimes --r 1 --M 1 --d 1 --d 2 --d 4 --eps 0.1 "
                 "--mode formula --format json --out " +
                 tmp("regimes.json"));
  CHECK(res.exit_code == 0);
  const std::string body = slurp(tmp("regimes.json"));
  // parse the three bound values
  std::vector<double> bounds;
  std::size_t pos = 0;
  while ((pos = body.find("\"bound\":", pos)) != std::string::npos) {
    pos += 8;
    bounds.push_back(std::stod(body.substr(pos)));
  }
  REQUIRE(bounds.size() == 3);
  CHECK(bounds[1] / bounds[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(bounds[2] / bounds[1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("lowerbound demo rows") {
  auto res = run("lowerbound --r 1 --M 2 --d 3 --budget 7 --seed 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("regime,d,budget,family_size,evaded_member,"
                     "witnessed_error") == 0);
  CHECK(res.out.find("Large,3,7,8,") != std::string::npos);

  auto mod = run("lowerbound --r 1 --M 1.5 --d 5 --eps 0.1 --budget 4");
  CHECK(mod.exit_code == 0);
  CHECK(mod.out.find("Moderate,5,4,10,") != std::string::npos);

  CHECK(run("lowerbound --r 1 --M 2 --d 13").exit_code == 2);
}

TEST_CASE("dispersion subcommand") {
  const std::string f = tmp("disp.txt");
  {
    std::ofstream os(f);
    os << "2 1\n0.5 0.5\n";
  }
  auto res = run("dispersion " + f);
  CHECK(res.exit_code == 0);
  CHECK(res.out == "0.5\n");

  {
    std::ofstream os(f);
    os << "3 0\n";
  }
  CHECK(run("dispersion " + f).out == "1\n");

  {
    std::ofstream os(f);
    os << "garbage\n";
  }
  CHECK(run("dispersion " + f).exit_code == 2);

  {
    std::ofstream os(f);
    os << "5 1\n0.1 0.2 0.3 0.4 0.5\n";
  }
  CHECK(run("dispersion " + f).exit_code == 4);
}

TEST_CASE("config file keys are read and flags override them") {
  const std::string cfg = tmp("config.ini");
  {
    std::ofstream os(cfg);
    os << "r=1\nM=1\nd=2\neps=0.5\nmode=verified\n";
  }
  auto res = run("detect --config " + cfg + " --out " + tmp("cfg_out.csv"));
  CHECK(res.exit_code == 0);
  CHECK(slurp(tmp("cfg_out.csv")).find("Small,1,1,2,0.5,") !=
        std::string::npos);

  auto over = run("detect --config " + cfg + " --M 2 --out " +
                  tmp("cfg_out.csv"));
  CHECK(over.exit_code == 0);
  CHECK(slurp(tmp("cfg_out.csv")).find("Large,1,2,2,0.5,") !=
        std::string::npos);
}

TEST_CASE("identical seeds give byte-identical output across thread counts") {
  const std::string a = tmp("det_a.csv"), b = tmp("det_b.csv");
  auto r1 = run("approximate --r 1 --M 1 --d 2 --eps 0.25 --trials 16 "
                "--seed 42 --threads 1 --out " + a);
  auto r4 = run("approximate --r 1 --M 1 --d 2 --eps 0.25 --trials 16 "
                "--seed 42 --threads 4 --out " + b);
  CHECK(r1.exit_code == 0);
  CHECK(r4.exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("true") != std::string::npos);
}
