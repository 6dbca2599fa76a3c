#include "qreg/objective.hpp"

#include <cmath>

namespace qreg {

AggregateState AggregateState::zero(int d) {
  AggregateState s;
  s.sum_x_plus = Vector::Zero(d);
  s.sum_x_minus = Vector::Zero(d);
  return s;
}

double residual_zero_tol(const Dataset& ds) { return 1e-9 * ds.response_scale(); }

ScoreResult compute_score(const Dataset& ds, Quantile tau, const Vector& beta) {
  if (beta.size() != ds.d()) throw Error("compute_score: beta must have d entries");
  const double tol = residual_zero_tol(ds);
  ScoreResult res;
  res.partition.plus_ids.reserve(ds.n());
  double obj = 0.0;
  for (int i = 0; i < ds.n(); ++i) {
    const double r = ds.residual(i, beta);
    obj += r >= 0.0 ? tau.tau * r : (1.0 - tau.tau) * (-r);
    if (r < -tol) {
      res.partition.minus_ids.push_back(i);
    } else {
      res.partition.plus_ids.push_back(i);
      if (r <= tol) ++res.partition.zero_count;
    }
  }
  res.objective = obj;
  return res;
}

double score_from_aggregates(const AggregateState& agg, Quantile tau, const Vector& beta) {
  const double plus = agg.sum_y_plus - beta.dot(agg.sum_x_plus);
  const double minus = beta.dot(agg.sum_x_minus) - agg.sum_y_minus;
  return tau.tau * plus + (1.0 - tau.tau) * minus;
}

AggregateState aggregates_from_partition(const Dataset& ds, const ResidualPartition& part) {
  AggregateState agg = AggregateState::zero(ds.d());
  for (int i : part.plus_ids) {
    agg.sum_y_plus += ds.y(i);
    agg.sum_x_plus += ds.design_row(i);
    ++agg.count_plus;
  }
  for (int j : part.minus_ids) {
    agg.sum_y_minus += ds.y(j);
    agg.sum_x_minus += ds.design_row(j);
    ++agg.count_minus;
  }
  return agg;
}

AggregateState update_neighbor(const AggregateState& agg, const Move& move, const Dataset& ds) {
  AggregateState out = agg;
  auto to_minus = [&](int t) {
    out.sum_y_plus -= ds.y(t);
    out.sum_y_minus += ds.y(t);
    const Vector row = ds.design_row(t);
    out.sum_x_plus -= row;
    out.sum_x_minus += row;
    --out.count_plus;
    ++out.count_minus;
  };
  auto to_plus = [&](int t) {
    out.sum_y_minus -= ds.y(t);
    out.sum_y_plus += ds.y(t);
    const Vector row = ds.design_row(t);
    out.sum_x_minus -= row;
    out.sum_x_plus += row;
    --out.count_minus;
    ++out.count_plus;
  };
  if (const auto* lv = std::get_if<Leave>(&move)) {
    to_minus(lv->t);
  } else if (const auto* en = std::get_if<Enter>(&move)) {
    to_plus(en->t);
  } else {
    const auto& sw = std::get<Swap>(move);
    to_minus(sw.s);
    to_plus(sw.t);
  }
  return out;
}

AggregateTracker::AggregateTracker(const Dataset& ds, const ResidualPartition& part)
    : ds_(&ds), agg_(aggregates_from_partition(ds, part)), in_plus_(ds.n(), 0) {
  for (int i : part.plus_ids) in_plus_[i] = 1;
  const size_t covered = part.plus_ids.size() + part.minus_ids.size();
  if (covered != static_cast<size_t>(ds.n())) {
    throw Error("AggregateTracker: partition does not cover all points");
  }
}

void AggregateTracker::apply(const Move& move) {
  if (const auto* lv = std::get_if<Leave>(&move)) {
    if (!in_plus(lv->t)) throw Error("Leave: point is not in I+");
    in_plus_[lv->t] = 0;
  } else if (const auto* en = std::get_if<Enter>(&move)) {
    if (in_plus(en->t)) throw Error("Enter: point is not in I-");
    in_plus_[en->t] = 1;
  } else {
    const auto& sw = std::get<Swap>(move);
    if (!in_plus(sw.s)) throw Error("Swap: s is not in I+");
    if (in_plus(sw.t)) throw Error("Swap: t is not in I-");
    in_plus_[sw.s] = 0;
    in_plus_[sw.t] = 1;
  }
  agg_ = update_neighbor(agg_, move, *ds_);
  ++moves_applied_;
  if (++since_refresh_ >= kRefreshInterval) refresh();
}

void AggregateTracker::refresh() {
  since_refresh_ = 0;
  ResidualPartition part;
  for (int i = 0; i < ds_->n(); ++i) {
    (in_plus_[i] ? part.plus_ids : part.minus_ids).push_back(i);
  }
  agg_ = aggregates_from_partition(*ds_, part);
}

}  // namespace qreg
