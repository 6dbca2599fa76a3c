#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qreg/geometry.hpp"
#include "qreg/oracle.hpp"

namespace qreg {

/// One k-level vertex: the level line prev_line crosses next_line at
/// (z1, z2) and the level continues on next_line. from_above tells which
/// side next_line came from (and where prev_line goes).
struct SweepEvent {
  double z1 = 0.0;
  double z2 = 0.0;
  int prev_line = -1;
  int next_line = -1;
  bool from_above = false;
};

/// Ordered traversal of the k-level (k counted from the top, 1-based:
/// at most k-1 lines strictly above every level point).
struct KLevelPath {
  int k = 0;
  std::vector<Vertex> vertices;               // increasing z1
  std::vector<std::pair<int, int>> swaps;     // line ids crossing at each vertex
};

/// Streams the level vertices left to right without materializing the
/// path. Throws DegenerateError on coincident crossings (within 1e-12
/// relative z1), which signals the caller to perturb and retry.
void klevel_sweep_stream(const std::vector<Line2>& lines, int k,
                         const std::function<void(const SweepEvent&)>& visit);

/// Materialized sweep over a 2D arrangement (vertex ids are the
/// hyperplanes' source id-sets).
KLevelPath klevel_sweep(const Arrangement& arr, int k);

/// Writes the level polyline as CSV rows "z1,z2,line_a,line_b".
void dump_klevel_csv(const Arrangement& arr, int k, const std::string& path);

/// 2D solver walking the quantile level(s) of the dual arrangement with
/// aggregate updates at each vertex. Evaluates level ceil((1-tau)n), and
/// also (1-tau)n + 1 when (1-tau)n is an integer.
Solution qreg2d_solve(const Dataset& ds, Quantile tau);

/// The level indices qreg2d_solve evaluates.
std::vector<int> qreg2d_levels(int n, Quantile tau);

}  // namespace qreg
