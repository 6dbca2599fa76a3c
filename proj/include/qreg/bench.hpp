#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreg/solvers.hpp"

namespace qreg {

struct BenchRow {
  std::string algo;
  int n = 0;
  int d = 2;
  double tau = 0.5;
  int rep = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  double objective = 0.0;
  std::optional<double> oracle_gap;  // set where the oracle ran
  long vertices = 0;
};

struct BenchConfig {
  std::vector<int> sizes;
  std::vector<Algo> algos;
  int reps = 3;
  double tau = 0.5;
  int d = 2;
  std::uint64_t seed = 0;
  double noise_scale = 1.0;
  double outlier_fraction = 0.1;
  int oracle_cutoff = 1024;  // run the oracle referee up to this n
};

/// One row per (n, algo, rep), deterministic instance per (n, rep, seed).
/// Throws GuardError when any algorithm disagrees with the oracle beyond
/// 1e-9 relative where the oracle ran.
std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qreg
