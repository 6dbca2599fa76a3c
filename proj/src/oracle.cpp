#include "qreg/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

namespace qreg {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_subset_guard(int n, int d) {
  if (d * std::log(static_cast<double>(std::max(n, 2))) > std::log(1e8)) {
    throw GuardError("brute force guard: n^d exceeds 1e8 (n=" + std::to_string(n) +
                     ", d=" + std::to_string(d) + ")");
  }
}

}  // namespace

Solution brute_force_solve(const Dataset& ds, Quantile tau) {
  const auto t0 = Clock::now();
  const int n = ds.n();
  const int d = ds.d();
  if (n < d) throw Error("brute_force_solve: need n >= d");
  check_subset_guard(n, d);

  std::vector<int> ids(d);
  for (int i = 0; i < d; ++i) ids[i] = i;

  Solution best;
  bool found = false;
  long visited = 0;
  while (true) {
    if (auto v = vertex_from_subset(ds, ids)) {
      ++visited;
      const Vector beta = v->beta();
      const double obj = compute_score(ds, tau, beta).objective;
      if (!found || obj < best.objective ||
          (obj == best.objective && v->defining_ids < best.support_ids)) {
        found = true;
        best.beta = beta;
        best.objective = obj;
        best.support_ids = v->defining_ids;
      }
    }
    // next combination in lexicographic order
    int k = d - 1;
    while (k >= 0 && ids[k] == n - d + k) --k;
    if (k < 0) break;
    ++ids[k];
    for (int m = k + 1; m < d; ++m) ids[m] = ids[m - 1] + 1;
  }
  if (!found) throw DegenerateError("brute_force_solve: every d-subset is singular");
  best.stats.vertices_visited = visited;
  best.stats.iterations = visited;
  best.stats.wall_time_ms = elapsed_ms(t0);
  return best;
}

namespace {

// Crossing abscissa of raw dual lines i and j; nullopt when parallel.
std::optional<double> crossing_x(const Dataset& ds, int i, int j) {
  const double denom = ds.x(i, 0) - ds.x(j, 0);  // slopes are -x
  const double scale = std::abs(ds.x(i, 0)) + std::abs(ds.x(j, 0));
  if (std::abs(denom) <= 1e-12 * std::max(scale, 1e-300)) return std::nullopt;
  return (ds.y(i) - ds.y(j)) / denom;
}

}  // namespace

Solution neighbor_descent_solve_2d(const Dataset& ds, Quantile tau,
                                   std::optional<std::pair<int, int>> start) {
  const auto t0 = Clock::now();
  if (ds.d() != 2) throw Error("neighbor_descent_solve_2d: d must be 2");
  const int n = ds.n();
  if (n < 2) throw Error("neighbor_descent_solve_2d: need n >= 2");

  auto vertex_of = [&](int a, int b) -> std::optional<Vertex> {
    const int ids[2] = {a, b};
    return vertex_from_subset(ds, ids);
  };

  std::pair<int, int> cur;
  std::optional<Vertex> cur_vertex;
  if (start) {
    cur = *start;
    cur_vertex = vertex_of(cur.first, cur.second);
    if (!cur_vertex) throw DegenerateError("neighbor descent: start pair is singular");
  } else {
    bool ok = false;
    for (int i = 0; i < n && !ok; ++i) {
      for (int j = i + 1; j < n && !ok; ++j) {
        if ((cur_vertex = vertex_of(i, j))) {
          cur = {i, j};
          ok = true;
        }
      }
    }
    if (!ok) throw DegenerateError("neighbor descent: every pair is singular");
  }

  Vector beta = cur_vertex->beta();
  ScoreResult sr = compute_score(ds, tau, beta);
  AggregateTracker tracker(ds, sr.partition);
  double cur_obj = sr.objective;
  const double tol = residual_zero_tol(ds);
  const double improve_eps = 1e-12 * std::max(1.0, std::abs(cur_obj));

  long visited = 1;
  long iters = 0;
  const long max_iters = static_cast<long>(n) * (n - 1) / 2 + 1;

  while (iters++ < max_iters) {
    const double cur_x = cur_vertex->coords(0);
    struct Candidate {
      double obj;
      std::pair<int, int> pair;  // sorted
      int stay, depart, arrive;
      Vector beta;
    };
    std::optional<Candidate> best;

    for (int which = 0; which < 2; ++which) {
      const int stay = which == 0 ? cur.first : cur.second;
      const int depart = which == 0 ? cur.second : cur.first;
      // nearest crossings of line `stay` strictly left/right of cur_x
      int left = -1, right = -1;
      double left_x = -std::numeric_limits<double>::infinity();
      double right_x = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        if (j == stay || j == depart) continue;
        const auto xj = crossing_x(ds, stay, j);
        if (!xj) continue;
        if (*xj < cur_x && *xj > left_x) {
          left_x = *xj;
          left = j;
        } else if (*xj > cur_x && *xj < right_x) {
          right_x = *xj;
          right = j;
        }
      }
      for (int arrive : {left, right}) {
        if (arrive < 0) continue;
        auto v = vertex_of(stay, arrive);
        if (!v) continue;
        const Vector nb = v->beta();
        AggregateState agg = tracker.state();
        if (!tracker.in_plus(arrive)) agg = update_neighbor(agg, Enter{arrive}, ds);
        if (ds.residual(depart, nb) < -tol) agg = update_neighbor(agg, Leave{depart}, ds);
        const double obj = score_from_aggregates(agg, tau, nb);
        std::pair<int, int> key = {std::min(stay, arrive), std::max(stay, arrive)};
        if (!best || obj < best->obj || (obj == best->obj && key < best->pair)) {
          best = Candidate{obj, key, stay, depart, arrive, nb};
        }
      }
    }

    if (!best || best->obj >= cur_obj - improve_eps) break;  // local = global by convexity

    if (!tracker.in_plus(best->arrive)) tracker.apply(Enter{best->arrive});
    if (ds.residual(best->depart, best->beta) < -tol) tracker.apply(Leave{best->depart});
    cur = best->pair;
    cur_vertex = vertex_of(cur.first, cur.second);
    cur_obj = best->obj;
    beta = best->beta;
    ++visited;
  }

  Solution sol;
  sol.beta = beta;
  sol.objective = compute_score(ds, tau, beta).objective;
  sol.support_ids = {cur.first, cur.second};
  std::sort(sol.support_ids.begin(), sol.support_ids.end());
  sol.stats.vertices_visited = visited;
  sol.stats.iterations = iters;
  sol.stats.wall_time_ms = elapsed_ms(t0);
  return sol;
}

std::vector<Vertex> enumerate_vertices_in_interval(const Arrangement& arr,
                                                   const SearchInterval& R) {
  const int m = static_cast<int>(arr.hyperplanes.size());
  const int k = arr.dim;
  if (k < 2) throw Error("enumerate_vertices_in_interval: dim must be >= 2");

  // subsets-count guard (desk-scale referee only)
  double subsets = 1.0;
  for (int i = 0; i < k; ++i) subsets *= static_cast<double>(m - i) / (i + 1);
  if (subsets > 2e6) throw GuardError("enumerate_vertices_in_interval: too many subsets");

  std::map<std::vector<int>, Vertex> unique;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  if (m < k) return {};
  while (true) {
    Matrix a(k, k);
    Vector b(k);
    for (int r = 0; r < k; ++r) {
      a.row(r) = arr.hyperplanes[pick[r]].coeffs.transpose();
      b(r) = arr.hyperplanes[pick[r]].rhs;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-12);
    if (lu.isInvertible()) {
      const Vector local = lu.solve(b);
      const double z1 = local(0);  // search coordinate is always slot 0
      if (R.contains(z1)) {
        Vertex v;
        v.coords = lift(arr, local);
        for (int r = 0; r < k; ++r) {
          const auto& ids = arr.hyperplanes[pick[r]].source_ids;
          v.defining_ids.insert(v.defining_ids.end(), ids.begin(), ids.end());
        }
        std::sort(v.defining_ids.begin(), v.defining_ids.end());
        v.defining_ids.erase(std::unique(v.defining_ids.begin(), v.defining_ids.end()),
                             v.defining_ids.end());
        unique.emplace(v.defining_ids, std::move(v));
      }
    }
    int t = k - 1;
    while (t >= 0 && pick[t] == m - k + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int s = t + 1; s < k; ++s) pick[s] = pick[s - 1] + 1;
  }
  std::vector<Vertex> out;
  out.reserve(unique.size());
  for (auto& [ids, v] : unique) out.push_back(std::move(v));
  return out;
}

}  // namespace qreg
