#include "qreg/klevel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace qreg {

namespace {

constexpr double kCoincidenceTol = 1e-12;

// The sweep works in the point view: line (slope s, intercept c) becomes
// the point (s, c). A crossing of lines i,j sits at z1 = -sigma where
// sigma = (c_j - c_i)/(s_j - s_i), so sweeping z1 left to right means
// processing hits in strictly decreasing sigma. The next hit of the
// current level line is always an extreme point of the current above-set
// or below-set, so it suffices to scan per-group convex hulls.
struct GroupHullSweep {
  const std::vector<Line2>& lines;
  int n;
  int group_size = 0;
  std::vector<std::vector<int>> members;  // per group, sorted by (s, c, id)
  std::vector<std::vector<int>> hull_above, hull_below;
  std::vector<char> above;   // side of every non-pivot line
  std::vector<int> group_of; // position -> group
  std::vector<int> pos_of;   // line position in `lines`

  explicit GroupHullSweep(const std::vector<Line2>& ls) : lines(ls), n((int)ls.size()) {}

  double sx(int p) const { return lines[p].slope; }
  double sy(int p) const { return lines[p].icept; }

  static double cross(double ox, double oy, double ax, double ay, double bx, double by) {
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
  }

  void build_hull(const std::vector<int>& mem, bool side, std::vector<int>& out, int pivot) {
    // Andrew monotone chain over the current side members; collinear
    // points stay on the hull (strict turns only are popped).
    out.clear();
    buf_.clear();
    for (int p : mem) {
      if (p != pivot && (above[p] != 0) == side) buf_.push_back(p);
    }
    const int m = (int)buf_.size();
    if (m <= 2) {
      out = buf_;
      return;
    }
    auto& h = out;
    for (int pass = 0; pass < 2; ++pass) {
      const size_t base = h.size();
      for (int t = 0; t < m; ++t) {
        const int p = buf_[pass == 0 ? t : m - 1 - t];
        while (h.size() >= base + 2) {
          const int a = h[h.size() - 2], b = h[h.size() - 1];
          if (cross(sx(a), sy(a), sx(b), sy(b), sx(p), sy(p)) < 0.0) {
            h.pop_back();
          } else {
            break;
          }
        }
        h.push_back(p);
      }
      h.pop_back();  // endpoint repeats as the next pass's start
    }
  }

  void init(int k) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    // top-to-bottom at z1 -> -inf: ascending slope, parallel ties by
    // intercept (higher on top), then id
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (sx(a) != sx(b)) return sx(a) < sx(b);
      if (sy(a) != sy(b)) return sy(a) > sy(b);
      return a < b;
    });
    pivot_ = order[k - 1];
    above.assign(n, 0);
    for (int r = 0; r < k - 1; ++r) above[order[r]] = 1;

    group_size = std::max(8, (int)std::lround(std::sqrt((double)n)));
    const int groups = (n + group_size - 1) / group_size;
    members.assign(groups, {});
    group_of.assign(n, 0);
    for (int r = 0; r < n; ++r) {
      const int g = std::min(r / group_size, groups - 1);
      members[g].push_back(order[r]);  // already (s, c, id)-sorted... by (s, c desc, id)
      group_of[order[r]] = g;
    }
    // hull building wants plain (s, c) ascending
    for (auto& mem : members) {
      std::sort(mem.begin(), mem.end(), [&](int a, int b) {
        if (sx(a) != sx(b)) return sx(a) < sx(b);
        if (sy(a) != sy(b)) return sy(a) < sy(b);
        return a < b;
      });
    }
    hull_above.assign(groups, {});
    hull_below.assign(groups, {});
    for (int g = 0; g < groups; ++g) {
      build_hull(members[g], true, hull_above[g], pivot_);
      build_hull(members[g], false, hull_below[g], pivot_);
    }
    sigma_ = std::numeric_limits<double>::infinity();
  }

  void run(const std::function<void(const SweepEvent&)>& visit) {
    while (true) {
      best_ = -std::numeric_limits<double>::infinity();
      second_ = -std::numeric_limits<double>::infinity();
      best_id_ = -1;
      for (size_t g = 0; g < members.size(); ++g) {
        for (int q : hull_above[g]) consider(q);
        for (int q : hull_below[g]) consider(q);
      }
      if (best_id_ < 0) return;
      if (second_ > -std::numeric_limits<double>::infinity() &&
          best_ - second_ <= kCoincidenceTol * std::max(1.0, std::abs(best_))) {
        throw DegenerateError("klevel sweep: coincident crossings at z1=" +
                              std::to_string(-best_));
      }
      if (std::isfinite(sigma_) &&
          sigma_ - best_ <= kCoincidenceTol * std::max(1.0, std::abs(best_))) {
        throw DegenerateError("klevel sweep: coincident consecutive crossings");
      }

      SweepEvent ev;
      ev.z1 = -best_;
      ev.z2 = lines[pivot_].at(ev.z1);
      ev.prev_line = lines[pivot_].id;
      ev.next_line = lines[best_id_].id;
      ev.from_above = above[best_id_] != 0;
      visit(ev);

      // old pivot takes the hit line's former side; the hit becomes pivot
      const bool side = above[best_id_] != 0;
      above[pivot_] = side ? 1 : 0;
      const int old_pivot = pivot_;
      pivot_ = best_id_;
      sigma_ = best_;
      rebuild(group_of[old_pivot], side);
      if (group_of[best_id_] != group_of[old_pivot]) rebuild(group_of[best_id_], side);
    }
  }

 private:
  void consider(int q) {
    const double denom = sx(q) - sx(pivot_);
    if (denom == 0.0) return;  // parallel, never crosses
    const double sigma = (sy(q) - sy(pivot_)) / denom;
    if (!std::isfinite(sigma) || sigma >= sigma_) return;
    if (sigma > best_) {
      second_ = best_;
      best_ = sigma;
      best_id_ = q;
    } else if (sigma > second_) {
      second_ = sigma;
    }
  }

  void rebuild(int g, bool side) {
    build_hull(members[g], side, side ? hull_above[g] : hull_below[g], pivot_);
  }

  std::vector<int> buf_;
  int pivot_ = -1;
  double sigma_ = 0.0;
  double best_ = 0.0, second_ = 0.0;
  int best_id_ = -1;
};

}  // namespace

void klevel_sweep_stream(const std::vector<Line2>& lines, int k,
                         const std::function<void(const SweepEvent&)>& visit) {
  const int n = (int)lines.size();
  if (n == 0) throw Error("klevel_sweep: no lines");
  if (k < 1 || k > n) throw Error("klevel_sweep: k must lie in [1, n]");
  GroupHullSweep sweep(lines);
  sweep.init(k);
  sweep.run(visit);
}

KLevelPath klevel_sweep(const Arrangement& arr, int k) {
  if (arr.dim != 2) throw Error("klevel_sweep: 2D arrangement required");
  auto lines = as_lines_2d(arr);
  // ids inside the sweep index this local vector
  std::vector<Line2> local = lines;
  for (int i = 0; i < (int)local.size(); ++i) local[i].id = i;

  KLevelPath path;
  path.k = k;
  klevel_sweep_stream(local, k, [&](const SweepEvent& ev) {
    Vertex v;
    Vector coords(2);
    coords << ev.z1, ev.z2;
    v.coords = lift(arr, coords);
    const auto& a = arr.hyperplanes[lines[ev.prev_line].id].source_ids;
    const auto& b = arr.hyperplanes[lines[ev.next_line].id].source_ids;
    v.defining_ids = a;
    v.defining_ids.insert(v.defining_ids.end(), b.begin(), b.end());
    std::sort(v.defining_ids.begin(), v.defining_ids.end());
    v.defining_ids.erase(std::unique(v.defining_ids.begin(), v.defining_ids.end()),
                         v.defining_ids.end());
    path.vertices.push_back(std::move(v));
    path.swaps.emplace_back(lines[ev.prev_line].id, lines[ev.next_line].id);
  });
  return path;
}

void dump_klevel_csv(const Arrangement& arr, int k, const std::string& path) {
  KLevelPath p = klevel_sweep(arr, k);
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << "z1,z2,line_a,line_b\n";
  char buf[96];
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%d\n", p.vertices[i].coords(0),
                  p.vertices[i].coords(1), p.swaps[i].first, p.swaps[i].second);
    out << buf;
  }
}

std::vector<int> qreg2d_levels(int n, Quantile tau) {
  const double r = (1.0 - tau.tau) * n;
  const double rounded = std::round(r);
  std::vector<int> ks;
  if (std::abs(r - rounded) <= 1e-9 * std::max(1.0, (double)n)) {
    const int k = (int)rounded;
    if (k >= 1 && k <= n) ks.push_back(k);
    if (k + 1 >= 1 && k + 1 <= n) ks.push_back(k + 1);
  } else {
    const int k = (int)std::ceil(r);
    if (k >= 1 && k <= n) ks.push_back(k);
  }
  if (ks.empty()) ks.push_back(std::min(n, std::max(1, (int)std::ceil(r))));
  return ks;
}

namespace {

struct LevelBest {
  double objective = std::numeric_limits<double>::infinity();
  std::pair<int, int> pair{-1, -1};
  long vertices = 0;
};

LevelBest qreg2d_core(const Dataset& ds, Quantile tau) {
  const auto arr = dual_arrangement(ds);
  const auto lines = as_lines_2d(arr);
  if ((int)lines.size() != ds.n()) {
    throw DegenerateError("qreg2d: vertical dual lines present");
  }

  LevelBest best;
  for (int k : qreg2d_levels(ds.n(), tau)) {
    bool first = true;
    int prev_pivot = -1;
    bool prev_from_above = false;
    AggregateTracker* tracker = nullptr;
    std::optional<AggregateTracker> tracker_store;

    klevel_sweep_stream(lines, k, [&](const SweepEvent& ev) {
      ++best.vertices;
      Vector beta(2);
      beta << ev.z2, ev.z1;  // intercept, slope
      double obj;
      if (first) {
        first = false;
        ScoreResult sr = compute_score(ds, tau, beta);
        tracker_store.emplace(ds, sr.partition);
        tracker = &*tracker_store;
        obj = sr.objective;
      } else {
        // previous zero point settles on the side it crossed to; the
        // arriving line becomes a zero (joins I+)
        if (!prev_from_above && tracker->in_plus(prev_pivot)) {
          tracker->apply(Leave{prev_pivot});
        }
        if (!tracker->in_plus(ev.next_line)) tracker->apply(Enter{ev.next_line});
        obj = score_from_aggregates(tracker->state(), tau, beta);
      }
      prev_pivot = ev.prev_line;
      prev_from_above = ev.from_above;
      std::pair<int, int> key{std::min(ev.prev_line, ev.next_line),
                              std::max(ev.prev_line, ev.next_line)};
      if (obj < best.objective || (obj == best.objective && key < best.pair)) {
        best.objective = obj;
        best.pair = key;
      }
    });
  }
  if (best.pair.first < 0) throw DegenerateError("qreg2d: level has no vertices");
  return best;
}

}  // namespace

Solution qreg2d_solve(const Dataset& ds, Quantile tau) {
  const auto t0 = std::chrono::steady_clock::now();
  if (ds.d() != 2) throw Error("qreg2d_solve: d must be 2");
  if (ds.n() < 2) throw Error("qreg2d_solve: need n >= 2");

  LevelBest best;
  const Dataset* solve_ds = &ds;
  std::optional<Dataset> perturbed;
  try {
    best = qreg2d_core(ds, tau);
  } catch (const DegenerateError&) {
    perturbed = perturb(ds, 1e-9, 0x51c5eedULL);
    solve_ds = &*perturbed;
    best = qreg2d_core(*solve_ds, tau);
  }

  Solution sol;
  sol.support_ids = {best.pair.first, best.pair.second};
  // beta and objective are reported against the original data
  auto v = vertex_from_subset(ds, sol.support_ids);
  if (!v) v = vertex_from_subset(*solve_ds, sol.support_ids);
  if (!v) throw DegenerateError("qreg2d: optimal pair is singular");
  sol.beta = v->beta();
  sol.objective = compute_score(ds, tau, sol.beta).objective;
  sol.stats.vertices_visited = best.vertices;
  sol.stats.iterations = best.vertices;
  sol.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace qreg
