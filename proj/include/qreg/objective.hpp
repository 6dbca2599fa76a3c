#pragma once

#include <variant>
#include <vector>

#include "qreg/dataset.hpp"
#include "qreg/types.hpp"

namespace qreg {

/// Residual sign partition. Zero residuals (|r| <= residual_zero_tol)
/// count as I+ and are tallied in zero_count.
struct ResidualPartition {
  std::vector<int> plus_ids;   // I+: y_i >= predicted
  std::vector<int> minus_ids;  // I-: y_i <  predicted
  int zero_count = 0;
};

/// The 2d+2 running sums that make O(d) objective updates possible.
struct AggregateState {
  double sum_y_plus = 0.0;
  Vector sum_x_plus;  // length d, component 0 tracks count_plus
  int count_plus = 0;
  double sum_y_minus = 0.0;
  Vector sum_x_minus;
  int count_minus = 0;

  static AggregateState zero(int d);
};

/// |r| at or below this counts as a zero residual: 1e-9 x response scale.
double residual_zero_tol(const Dataset& ds);

struct ScoreResult {
  double objective = 0.0;
  ResidualPartition partition;
};

/// Pinball objective sum tau*r+ + (1-tau)*r- plus the sign partition. O(nd).
ScoreResult compute_score(const Dataset& ds, Quantile tau, const Vector& beta);

/// Objective from aggregates alone, O(d):
/// tau*(Sy+ - beta.Sx+) + (1-tau)*(beta.Sx- - Sy-).
/// Exact when the aggregates match beta's partition.
double score_from_aggregates(const AggregateState& agg, Quantile tau, const Vector& beta);

/// Exact sums over each side. O(nd).
AggregateState aggregates_from_partition(const Dataset& ds, const ResidualPartition& part);

struct Leave {
  int t;  // I+ -> I-
};
struct Enter {
  int t;  // I- -> I+
};
struct Swap {
  int s;  // I+ -> I-
  int t;  // I- -> I+
};
using Move = std::variant<Leave, Enter, Swap>;

/// Applies one transition in exactly 2d+2 scalar updates. Trusts the
/// caller on the move's precondition; AggregateTracker checks it.
AggregateState update_neighbor(const AggregateState& agg, const Move& move, const Dataset& ds);

// Owns an AggregateState plus the side of every point. Verifies move
// preconditions and recomputes the sums from scratch every
// kRefreshInterval moves to bound floating-point drift.
class AggregateTracker {
 public:
  static constexpr int kRefreshInterval = 4096;

  AggregateTracker(const Dataset& ds, const ResidualPartition& part);

  void apply(const Move& move);
  const AggregateState& state() const { return agg_; }
  bool in_plus(int i) const { return in_plus_[i] != 0; }
  long moves_applied() const { return moves_applied_; }

 private:
  void refresh();

  const Dataset* ds_;
  AggregateState agg_;
  std::vector<char> in_plus_;
  long moves_applied_ = 0;
  int since_refresh_ = 0;
};

}  // namespace qreg
