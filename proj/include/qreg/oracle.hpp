#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qreg/geometry.hpp"
#include "qreg/objective.hpp"

namespace qreg {

struct SolveStats {
  long vertices_visited = 0;
  long iterations = 0;
  double wall_time_ms = 0.0;
};

struct Solution {
  Vector beta;                   // intercept first
  double objective = 0.0;
  std::vector<int> support_ids;  // the d points the optimum passes through
  SolveStats stats;
};

/// Exact global optimum over all non-singular d-subsets (Theorem-2.2
/// style enumeration). Ties break to lexicographically smallest sorted
/// support. Guarded to n^d <= 1e8.
Solution brute_force_solve(const Dataset& ds, Quantile tau);

/// Steepest-descent walk over arrangement vertices, d=2 only. Neighbors
/// are the nearest crossings left/right along each of the two defining
/// lines, found by an on-demand O(n) scan; candidate scores come from
/// aggregate updates. Convexity makes the walk end at the global optimum.
Solution neighbor_descent_solve_2d(const Dataset& ds, Quantile tau,
                                   std::optional<std::pair<int, int>> start = std::nullopt);

/// Brute-force referee: every arrangement vertex whose search coordinate
/// lies strictly inside R, deduplicated by defining id-set, lifted to
/// full dual coordinates.
std::vector<Vertex> enumerate_vertices_in_interval(const Arrangement& arr,
                                                   const SearchInterval& R);

}  // namespace qreg
