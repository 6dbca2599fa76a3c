#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qreg/geometry.hpp"
#include "qreg/oracle.hpp"
#include "qreg/rng.hpp"

namespace qreg {

/// Top-to-bottom line orders at the two boundaries of a slab. A pair of
/// lines crosses strictly inside the slab iff its relative order differs
/// between the two, so total_inversions == |S_in| and per-line counts are
/// the sampling weights w_i (sum = 2 * total).
struct BoundaryOrders {
  std::vector<int> start_order;             // positions into the line list
  std::vector<int> end_order;
  std::vector<long long> per_line_inversions;
  long long total_inversions = 0;
};

BoundaryOrders boundary_orders(const std::vector<Line2>& lines, const SearchInterval& R);
BoundaryOrders boundary_orders(const Arrangement& arr, const SearchInterval& R);

struct InversionCounts {
  long long total = 0;
  std::vector<long long> per_element;  // indexed by id
};

/// Merge-based inversion counting with per-element tallies (each
/// discordant pair increments both participants). O(n log n).
InversionCounts inversion_counts(std::span<const int> start_order,
                                 std::span<const int> end_order);

/// Uniform draw from the vertices strictly inside R: weighted line pick
/// by inversion count, then a uniform crossing of that line. nullopt iff
/// the slab holds no vertex.
std::optional<Vertex> sample_vertex_2d(const Arrangement& arr, const SearchInterval& R, Rng& rng);

/// |{vertices with search coordinate strictly inside R}|. 2D by inversion
/// counting; higher dimensions by summing counts over restrictions onto
/// each hyperplane against the larger-indexed ones.
long long count_vertices(const Arrangement& arr, const SearchInterval& R);

/// Uniform vertex draw in any dimension: hyperplane picked with weight
/// proportional to its incident-vertex count (double counting cancelled
/// by the factor dim), then recursion on the restriction.
std::optional<Vertex> sample_vertex(const Arrangement& arr, const SearchInterval& R, Rng& rng);

/// Minimum of the objective over the splitting plane z1 = v (d = 2):
/// the candidates are the n dual-line heights at v and the sequence is
/// convex once sorted, so a neighbor-comparing binary search finds it.
struct SplitScan {
  double score = 0.0;
  double z2 = 0.0;               // in-plane minimiser height
  std::vector<int> minima_ids;   // lines through the minimum (>= 1)
};
SplitScan binary_search_split_2d(const Dataset& ds, Quantile tau, double v);

enum class SplitVerdict { Left, Right, Optimal };

struct SplitOutcome {
  SplitVerdict verdict = SplitVerdict::Optimal;
  double score = 0.0;            // objective at the in-plane minimum
  Vector beta;                   // parameters of the reported minimum
  std::vector<int> support;      // points through it (d once snapped)
};

/// Probes the nearest crossings left/right of v along every line through
/// the in-plane minimum; an improving neighbor names the side holding the
/// optimum, otherwise convexity certifies global optimality.
SplitOutcome compute_interval_2d(const Dataset& ds, Quantile tau, const SearchInterval& R,
                                 double v, const SplitScan& scan);

/// The (d-1)-parameter instance of the problem constrained to beta_1 = v:
/// first predictor dropped, responses shifted by v * x_1.
Dataset reduce_dataset(const Dataset& ds, double v);

/// Split for d >= 3: solves the reduced instance recursively, lifts the
/// minimum back, and probes its 2d arrangement neighbors.
SplitOutcome split_dd(const Dataset& ds, Quantile tau, double v, Rng& rng);

/// Randomized divide-and-conquer solver. Writes one CSV row per
/// iteration to `trace` when given (iteration, v, |S_in|, decision,
/// best objective).
Solution randqr_solve(const Dataset& ds, Quantile tau, std::uint64_t seed,
                      std::ostream* trace = nullptr);

}  // namespace qreg
