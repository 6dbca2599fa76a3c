#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qreg/dataset.hpp"
#include "qreg/types.hpp"

namespace qreg {

// Dual (coefficient) space convention: a primal hyperplane
// y = b_0 + b_1 x_1 + ... + b_{d-1} x_{d-1} is the dual point
// z = (b_1, ..., b_{d-1}, b_0); a data point p becomes the hyperplane
// z_d + sum_{m<d} p_m z_m = p_d.  z_1 is the search coordinate.

/// beta (intercept first) -> dual coordinates (slopes..., intercept).
Vector dual_from_beta(const Vector& beta);
/// dual coordinates -> beta (intercept first).
Vector beta_from_dual(const Vector& z);

/// Affine hyperplane over the active coordinates of an Arrangement:
/// coeffs . z_active = rhs. source_ids lists the original data points
/// whose duals were intersected to produce it (singleton for a raw dual).
struct DualHyperplane {
  Vector coeffs;
  double rhs = 0.0;
  std::vector<int> source_ids;
};

/// One coordinate elimination performed by restrict_onto, recorded so
/// vertices of the restricted arrangement can be lifted back.
struct Elimination {
  int coord;                       // original dual coordinate removed
  std::vector<int> parent_coords;  // active coordinates of the equation below
  Vector coeffs;                   // aligned with parent_coords
  double rhs = 0.0;
};

struct Arrangement {
  int dim = 0;                      // active coordinate count
  std::vector<int> coordinate_map;  // active slot -> original dual coordinate
  std::vector<DualHyperplane> hyperplanes;
  std::vector<Elimination> eliminations;  // oldest first
  int degenerate_drops = 0;
};

/// Intersection of d dual hyperplanes == primal hyperplane through d points.
struct Vertex {
  Vector coords;                 // full dual space, length d
  std::vector<int> defining_ids; // sorted point indices

  Vector beta() const { return beta_from_dual(coords); }
};

/// Open range on a dual coordinate (the search coordinate by default).
/// Endpoints may be infinite.
struct SearchInterval {
  double lo;
  double hi;
  int coord = 0;  // active slot of the search coordinate

  static SearchInterval all() {
    return {-std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), 0};
  }
  bool contains(double v) const { return v > lo && v < hi; }
};

DualHyperplane dual_of_point(const Vector& predictors, double response, int id = -1);
DualHyperplane dual_of_point(const Dataset& ds, int i);

/// All n raw duals as a d-dimensional arrangement.
Arrangement dual_arrangement(const Dataset& ds);

/// Solves the d x d system putting zero residual on every id.
/// nullopt when the points do not determine a unique hyperplane.
std::optional<Vertex> vertex_from_subset(const Dataset& ds, std::span<const int> ids);

/// Intersection of two 2D lines, nullopt when parallel.
std::optional<std::pair<double, double>> intersect_2d(const DualHyperplane& a,
                                                      const DualHyperplane& b);

/// Substitutes hyperplane `onto` into every other hyperplane, eliminating
/// the active coordinate where `onto` has the largest coefficient (the
/// search coordinate is never eliminated). Rows that vanish are dropped
/// and counted in degenerate_drops.
Arrangement restrict_onto(const Arrangement& arr, int onto);

/// Recovers the full d dual coordinates of a point of a (possibly
/// repeatedly) restricted arrangement.
Vector lift(const Arrangement& arr, const Vector& local_coords);

/// 2D line in slope/intercept form: z2 = slope*z1 + icept.
struct Line2 {
  double slope = 0.0;
  double icept = 0.0;
  int id = -1;  // index into the arrangement's hyperplane list

  double at(double z1) const { return slope * z1 + icept; }
};

/// Slope/intercept view of a 2D arrangement. Near-vertical rows (z2
/// coefficient below 1e-12 of the row norm) are skipped.
std::vector<Line2> as_lines_2d(const Arrangement& arr);

}  // namespace qreg
