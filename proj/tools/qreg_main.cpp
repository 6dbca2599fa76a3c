#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qreg/bench.hpp"
#include "qreg/klevel.hpp"
#include "qreg/report.hpp"
#include "qreg/solvers.hpp"

namespace {

constexpr int kExitBadFlags = 2;
constexpr int kExitDataError = 3;
constexpr int kExitGuard = 4;

struct SolveArgs {
  std::string input;
  double tau = 0.5;
  std::string algo = "oracle";
  std::uint64_t seed = 0;
  double perturb = 1e-9;
  std::string trace;
  std::string dump_level;
  bool json = true;
};

int run_solve(const SolveArgs& args) {
  const qreg::Dataset ds = qreg::load_csv(args.input);
  if (ds.n() < ds.d()) {
    throw qreg::Error("need at least d points (n=" + std::to_string(ds.n()) +
                      ", d=" + std::to_string(ds.d()) + ")");
  }
  const qreg::Quantile tau(args.tau);
  const qreg::Algo algo = qreg::parse_algo(args.algo);

  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!args.trace.empty()) {
    trace_file.open(args.trace);
    if (!trace_file) throw qreg::Error("cannot open trace file: " + args.trace);
    trace = &trace_file;
  }

  const qreg::Solution sol =
      qreg::dispatch_solve(algo, ds, tau, args.seed, args.perturb, trace);

  if (!args.dump_level.empty()) {
    const auto arr = qreg::dual_arrangement(ds);
    qreg::dump_klevel_csv(arr, qreg::qreg2d_levels(ds.n(), tau).front(), args.dump_level);
  }

  std::cout << qreg::to_json(qreg::make_report(args.algo, ds, args.tau, args.seed,
                                               args.perturb, sol))
            << "\n";
  return 0;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      // "lo..hi" doubles from lo to hi inclusive
      const int lo = std::stoi(tok.substr(0, dots));
      const int hi = std::stoi(tok.substr(dots + 2));
      for (int n = lo; n <= hi; n *= 2) sizes.push_back(n);
    } else {
      sizes.push_back(std::stoi(tok));
    }
  }
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantile linear regression solver suite"};
  app.require_subcommand(1);

  SolveArgs sargs;
  auto* solve = app.add_subcommand("solve", "Solve one instance and print a JSON report");
  solve->add_option("--input", sargs.input, "CSV input path")->required();
  solve->add_option("--tau", sargs.tau, "quantile parameter in (0,1)")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  solve->add_option("--algo", sargs.algo, "oracle|neighbor|kset|randqr")
      ->check(CLI::IsMember({"oracle", "neighbor", "kset", "randqr"}));
  solve->add_option("--seed", sargs.seed, "random seed");
  solve->add_option("--perturb", sargs.perturb, "general-position perturbation magnitude")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--trace", sargs.trace, "randqr iteration trace CSV path");
  solve->add_option("--dump-level", sargs.dump_level, "write the quantile level polyline CSV");
  solve->add_flag("--json", sargs.json, "JSON report output (default)");

  std::string bench_sizes, bench_algos, bench_out = "bench.csv";
  int bench_reps = 3;
  double bench_tau = 0.5;
  int bench_d = 2;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "Run the benchmark matrix to a CSV file");
  bench->add_option("--sizes", bench_sizes, "comma list, ranges like 1024..65536 double")
      ->required();
  bench->add_option("--algos", bench_algos, "comma list of algorithms")->required();
  bench->add_option("--reps", bench_reps, "repetitions per size")->check(CLI::PositiveNumber);
  bench->add_option("--tau", bench_tau, "quantile parameter")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  bench->add_option("--d", bench_d, "instance dimension")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--out", bench_out, "output CSV path");

  int gen_n = 0, gen_d = 2;
  double gen_noise = 1.0, gen_outliers = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset CSV");
  gen->add_option("--n", gen_n, "point count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--d", gen_d, "dimension (predictors + 1)")->check(CLI::PositiveNumber);
  gen->add_option("--noise", gen_noise, "noise scale")->check(CLI::NonNegativeNumber);
  gen->add_option("--outliers", gen_outliers, "outlier fraction in [0,1)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadFlags;
  }

  try {
    if (*solve) return run_solve(sargs);
    if (*bench) {
      qreg::BenchConfig config;
      config.sizes = parse_sizes(bench_sizes);
      std::stringstream ss(bench_algos);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) config.algos.push_back(qreg::parse_algo(tok));
      }
      if (config.algos.empty()) {
        std::cerr << "bench: empty algorithm list\n";
        return kExitBadFlags;
      }
      if (config.sizes.empty()) {
        std::cerr << "bench: empty size list\n";
        return kExitBadFlags;
      }
      config.reps = bench_reps;
      config.tau = bench_tau;
      config.d = bench_d;
      config.seed = bench_seed;
      const auto rows = qreg::run_bench(config);
      qreg::write_bench_csv(rows, bench_out);
      std::cout << "wrote " << rows.size() << " rows to " << bench_out << "\n";
      return 0;
    }
    if (*gen) {
      if (gen_n < gen_d) {
        std::cerr << "gen: need --n >= --d (got n=" << gen_n << ", d=" << gen_d << ")\n";
        return kExitBadFlags;
      }
      qreg::Vector beta(gen_d);
      for (int m = 0; m < gen_d; ++m) beta(m) = (m % 2 == 0 ? 1.0 : -1.0) * (1.0 + m);
      const auto ds =
          qreg::generate_synthetic(gen_n, gen_d, beta, gen_noise, gen_outliers, gen_seed);
      qreg::write_csv(ds, gen_out);
      std::cout << "wrote " << ds.n() << " points to " << gen_out << "\n";
      return 0;
    }
  } catch (const qreg::GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const qreg::ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const qreg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitBadFlags;
}
