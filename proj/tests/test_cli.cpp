#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qreg/bench.hpp"
#include "qreg/report.hpp"
#include "test_helpers.hpp"

using namespace qreg;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/qreg_cli_out.txt";
  const std::string cmd = std::string(QREG_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  return res;
}

std::string running_csv() { return std::string(QREG_DATA_DIR) + "/running_example.csv"; }

}  // namespace

TEST_CASE("solve emits the pinned oracle report as JSON") {
  const auto res = run_cli("solve --input " + running_csv() + " --tau 0.5 --algo oracle");
  REQUIRE(res.exit_code == 0);
  const RunReport report = report_from_json(res.out);
  CHECK(report.algorithm == "oracle");
  CHECK(report.n == 7);
  CHECK(report.d == 2);
  CHECK(report.objective ==
        doctest::Approx(test::kRunningExampleObjective).epsilon(1e-7));
  CHECK(report.support_ids == std::vector<int>{0, 3});
}

TEST_CASE("randqr seeds agree on the objective") {
  const auto a = run_cli("solve --input " + running_csv() + " --algo randqr --seed 1");
  const auto b = run_cli("solve --input " + running_csv() + " --algo randqr --seed 2");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  const auto ra = report_from_json(a.out);
  const auto rb = report_from_json(b.out);
  CHECK(ra.objective == doctest::Approx(rb.objective).epsilon(1e-9));
}

TEST_CASE("invalid tau exits 2 and names the flag") {
  const auto res = run_cli("solve --input " + running_csv() + " --tau 1.5");
  CHECK(res.exit_code == 2);
  CHECK(res.out.find("--tau") != std::string::npos);
}

TEST_CASE("missing file exits 3") {
  const auto res = run_cli("solve --input /nonexistent.csv");
  CHECK(res.exit_code == 3);
}

TEST_CASE("gen then solve on noiseless data reaches zero objective") {
  const std::string path = "/tmp/qreg_gen_test.csv";
  const auto gen = run_cli("gen --n 7 --d 2 --seed 1 --noise 0 --out " + path);
  REQUIRE(gen.exit_code == 0);
  const auto res = run_cli("solve --input " + path + " --algo oracle");
  REQUIRE(res.exit_code == 0);
  CHECK(report_from_json(res.out).objective == doctest::Approx(0.0).epsilon(1e-9));

  const std::string path2 = "/tmp/qreg_gen_test2.csv";
  const auto gen2 = run_cli("gen --n 7 --d 2 --seed 1 --noise 0 --out " + path2);
  REQUIRE(gen2.exit_code == 0);
  std::ifstream f1(path), f2(path2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
}

TEST_CASE("gen validates n >= d") {
  const auto res = run_cli("gen --n 1 --d 2 --out /tmp/qreg_bad_gen.csv");
  CHECK(res.exit_code == 2);
}

TEST_CASE("bench writes one row per algo, size and rep with zero gaps") {
  const std::string out = "/tmp/qreg_bench_test.csv";
  const auto res =
      run_cli("bench --sizes 32,64 --algos oracle,kset,randqr --reps 3 --out " + out);
  REQUIRE(res.exit_code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "algo,n,d,tau,rep,seed,wall_ms,objective,oracle_gap,vertices");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    // oracle_gap column is present and zero-ish on these sizes
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 9; ++c) std::getline(ss, cell, ',');
    CHECK(std::stod(cell) <= 1e-9);
  }
  CHECK(rows == 18);
}

TEST_CASE("bench with an empty algo list exits 2") {
  const auto res = run_cli("bench --sizes 32 --algos , --out /tmp/qreg_bench_bad.csv");
  CHECK(res.exit_code == 2);
}

TEST_CASE("trace flag writes the iteration log") {
  const std::string trace = "/tmp/qreg_trace_test.csv";
  const auto res = run_cli("solve --input " + running_csv() +
                           " --algo randqr --seed 3 --trace " + trace);
  REQUIRE(res.exit_code == 0);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header == "iteration,v,s_in,decision,best_objective");
}

TEST_CASE("dump-level writes the polyline") {
  const std::string dump = "/tmp/qreg_dump_level.csv";
  const auto res =
      run_cli("solve --input " + running_csv() + " --algo kset --dump-level " + dump);
  REQUIRE(res.exit_code == 0);
  std::ifstream in(dump);
  std::string header;
  std::getline(in, header);
  CHECK(header == "z1,z2,line_a,line_b");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows > 0);
}

TEST_CASE("report JSON round-trips") {
  const Dataset ds = test::running_example();
  Solution sol;
  sol.beta = Vector(2);
  sol.beta << 1.25, -0.5;
  sol.objective = 3.5;
  sol.support_ids = {0, 3};
  sol.stats.vertices_visited = 21;
  sol.stats.wall_time_ms = 1.5;
  const RunReport report = make_report("kset", ds, 0.25, 9, 1e-9, sol);
  const RunReport back = report_from_json(to_json(report));
  CHECK(back.algorithm == report.algorithm);
  CHECK(back.n == report.n);
  CHECK(back.d == report.d);
  CHECK(back.tau == report.tau);
  CHECK(back.seed == report.seed);
  CHECK(back.beta == report.beta);
  CHECK(back.objective == report.objective);
  CHECK(back.support_ids == report.support_ids);
  CHECK(back.vertices_visited == report.vertices_visited);
  CHECK(back.perturb_magnitude == report.perturb_magnitude);
}

TEST_CASE("bench rows are deterministic for a fixed seed") {
  BenchConfig config;
  config.sizes = {24};
  config.algos = {Algo::KSet, Algo::RandQR};
  config.reps = 2;
  config.seed = 5;
  const auto a = run_bench(config);
  const auto b = run_bench(config);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].objective == b[i].objective);
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].algo == b[i].algo);
  }
}
