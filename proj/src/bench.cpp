#include "qreg/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qreg {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a;
}

Vector bench_beta(int d) {
  Vector beta(d);
  for (int m = 0; m < d; ++m) beta(m) = (m % 2 == 0 ? 1.0 : -1.0) * (1.0 + m);
  return beta;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.sizes.empty()) throw Error("bench: size list is empty");
  if (config.algos.empty()) throw Error("bench: algorithm list is empty");
  if (config.reps < 1) throw Error("bench: reps must be >= 1");

  const Quantile tau(config.tau);
  std::vector<BenchRow> rows;
  for (int n : config.sizes) {
    for (int rep = 0; rep < config.reps; ++rep) {
      const std::uint64_t inst_seed = mix(mix(config.seed, static_cast<std::uint64_t>(n)),
                                          static_cast<std::uint64_t>(rep));
      const Dataset ds = generate_synthetic(n, config.d, bench_beta(config.d),
                                            config.noise_scale, config.outlier_fraction,
                                            inst_seed);
      std::optional<double> oracle_obj;
      if (n <= config.oracle_cutoff) {
        oracle_obj = brute_force_solve(ds, tau).objective;
      }
      for (Algo algo : config.algos) {
        const std::uint64_t run_seed = mix(inst_seed, 0xa1905u);
        Solution sol = dispatch_solve(algo, ds, tau, run_seed);
        BenchRow row;
        row.algo = algo_name(algo);
        row.n = n;
        row.d = config.d;
        row.tau = config.tau;
        row.rep = rep;
        row.seed = inst_seed;
        row.wall_ms = sol.stats.wall_time_ms;
        row.objective = sol.objective;
        row.vertices = sol.stats.vertices_visited;
        if (oracle_obj) {
          const double gap = std::abs(sol.objective - *oracle_obj) /
                             std::max(1.0, std::abs(*oracle_obj));
          row.oracle_gap = gap;
          if (gap > 1e-9) {
            throw GuardError("bench: " + row.algo + " disagrees with the oracle on n=" +
                             std::to_string(n) + " rep=" + std::to_string(rep) +
                             " (relative gap " + std::to_string(gap) + ")");
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << "algo,n,d,tau,rep,seed,wall_ms,objective,oracle_gap,vertices\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.17g,%d,%llu,%.6f,%.17g,", r.algo.c_str(), r.n,
                  r.d, r.tau, r.rep, static_cast<unsigned long long>(r.seed), r.wall_ms,
                  r.objective);
    out << buf;
    if (r.oracle_gap) {
      std::snprintf(buf, sizeof(buf), "%.3g", *r.oracle_gap);
      out << buf;
    }
    out << ',' << r.vertices << '\n';
  }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("loglog_slope: need matched samples");
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qreg
