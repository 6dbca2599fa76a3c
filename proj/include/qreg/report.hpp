#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qreg/oracle.hpp"
#include "qreg/types.hpp"

namespace qreg {

/// Machine-readable record of one solver run.
struct RunReport {
  std::string algorithm;
  int n = 0;
  int d = 0;
  double tau = 0.5;
  std::uint64_t seed = 0;
  std::vector<double> beta;
  double objective = 0.0;
  std::vector<int> support_ids;
  double wall_time_ms = 0.0;
  long vertices_visited = 0;
  double perturb_magnitude = 0.0;
};

RunReport make_report(const std::string& algorithm, const Dataset& ds, double tau,
                      std::uint64_t seed, double perturb_magnitude, const Solution& sol);

std::string to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

}  // namespace qreg
