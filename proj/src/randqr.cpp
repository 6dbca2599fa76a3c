#include "qreg/randqr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace qreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class BoundarySide { Start, End };

// Top-to-bottom order of the lines at one slab boundary. At a finite
// boundary lines are ordered by height; heights within 1e-12 relative of
// each other (the boundary passes through a crossing) are reordered by
// the slope rule that matches the order just inside the open slab, which
// is the eps-nudge the boundary semantics ask for. At infinite
// boundaries the slope decides outright and parallel lines keep one
// fixed relative order at both ends.
std::vector<int> order_at_boundary(const std::vector<Line2>& lines, double x,
                                   BoundarySide side) {
  const int m = static_cast<int>(lines.size());
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;

  const bool slope_desc = (side == BoundarySide::Start);
  auto slope_tie = [&](int a, int b) {
    if (lines[a].slope != lines[b].slope) {
      return slope_desc ? lines[a].slope > lines[b].slope : lines[a].slope < lines[b].slope;
    }
    return a < b;
  };

  if (std::isinf(x)) {
    const bool at_minus = x < 0.0;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (lines[a].slope != lines[b].slope) {
        // top at -inf is the smallest slope, at +inf the largest
        return at_minus ? lines[a].slope < lines[b].slope : lines[a].slope > lines[b].slope;
      }
      if (lines[a].icept != lines[b].icept) return lines[a].icept > lines[b].icept;
      return a < b;
    });
    return order;
  }

  std::vector<double> h(m);
  for (int i = 0; i < m; ++i) h[i] = lines[i].at(x);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (h[a] != h[b]) return h[a] > h[b];
    return slope_tie(a, b);
  });
  // regroup near-ties by the just-inside slope rule
  int run = 0;
  for (int i = 1; i <= m; ++i) {
    const bool tied =
        i < m && std::abs(h[order[i]] - h[order[i - 1]]) <=
                     1e-12 * std::max({1.0, std::abs(h[order[i]]), std::abs(h[order[i - 1]])});
    if (!tied) {
      if (i - run > 1) std::sort(order.begin() + run, order.begin() + i, slope_tie);
      run = i;
    }
  }
  return order;
}

}  // namespace

InversionCounts inversion_counts(std::span<const int> start_order,
                                 std::span<const int> end_order) {
  const int m = static_cast<int>(start_order.size());
  if (static_cast<int>(end_order.size()) != m) {
    throw Error("inversion_counts: order lengths differ");
  }
  int max_id = -1;
  for (int id : start_order) max_id = std::max(max_id, id);
  std::vector<int> pos(max_id + 1, -1);
  for (int p = 0; p < m; ++p) {
    const int id = end_order[p];
    if (id < 0 || id > max_id || (id <= max_id && pos.size() <= static_cast<size_t>(id))) {
      throw Error("inversion_counts: orders are not over the same id set");
    }
    pos[id] = p;
  }

  struct Entry {
    int key;  // position in end order
    int idx;  // position in start order
  };
  std::vector<Entry> a(m), tmp(m);
  std::vector<long long> tally(m, 0);
  for (int t = 0; t < m; ++t) {
    const int id = start_order[t];
    if (id < 0 || id > max_id || pos[id] < 0) {
      throw Error("inversion_counts: orders are not over the same id set");
    }
    a[t] = {pos[id], t};
  }

  long long total = 0;
  for (int width = 1; width < m; width *= 2) {
    for (int lo = 0; lo + width < m; lo += 2 * width) {
      const int mid = lo + width;
      const int hi = std::min(lo + 2 * width, m);
      int i = lo, j = mid, k = lo;
      int from_right = 0;
      while (i < mid && j < hi) {
        if (a[i].key <= a[j].key) {
          tally[a[i].idx] += from_right;
          tmp[k++] = a[i++];
        } else {
          const long long rem = mid - i;
          total += rem;
          tally[a[j].idx] += rem;
          ++from_right;
          tmp[k++] = a[j++];
        }
      }
      while (i < mid) {
        tally[a[i].idx] += from_right;
        tmp[k++] = a[i++];
      }
      while (j < hi) tmp[k++] = a[j++];
      std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
    }
  }

  InversionCounts out;
  out.total = total;
  out.per_element.assign(max_id + 1, 0);
  for (int t = 0; t < m; ++t) out.per_element[start_order[t]] += tally[t];
  return out;
}

BoundaryOrders boundary_orders(const std::vector<Line2>& lines, const SearchInterval& R) {
  if (!(R.lo < R.hi)) throw Error("boundary_orders: empty interval");
  BoundaryOrders bo;
  bo.start_order = order_at_boundary(lines, R.lo, BoundarySide::Start);
  bo.end_order = order_at_boundary(lines, R.hi, BoundarySide::End);
  auto inv = inversion_counts(bo.start_order, bo.end_order);
  bo.total_inversions = inv.total;
  bo.per_line_inversions.assign(lines.size(), 0);
  for (size_t i = 0; i < lines.size() && i < inv.per_element.size(); ++i) {
    bo.per_line_inversions[i] = inv.per_element[i];
  }
  return bo;
}

BoundaryOrders boundary_orders(const Arrangement& arr, const SearchInterval& R) {
  return boundary_orders(as_lines_2d(arr), R);
}

namespace {

Vertex vertex_from_lines(const Arrangement& arr, const std::vector<Line2>& lines, int i, int j) {
  const double denom = lines[i].slope - lines[j].slope;
  const double z1 = (lines[j].icept - lines[i].icept) / denom;
  const double z2 = lines[i].at(z1);
  Vertex v;
  Vector local(2);
  local << z1, z2;
  v.coords = lift(arr, local);
  const auto& a = arr.hyperplanes[lines[i].id].source_ids;
  const auto& b = arr.hyperplanes[lines[j].id].source_ids;
  v.defining_ids = a;
  v.defining_ids.insert(v.defining_ids.end(), b.begin(), b.end());
  std::sort(v.defining_ids.begin(), v.defining_ids.end());
  v.defining_ids.erase(std::unique(v.defining_ids.begin(), v.defining_ids.end()),
                       v.defining_ids.end());
  return v;
}

}  // namespace

std::optional<Vertex> sample_vertex_2d(const Arrangement& arr, const SearchInterval& R,
                                       Rng& rng) {
  const auto lines = as_lines_2d(arr);
  const auto bo = boundary_orders(lines, R);
  if (bo.total_inversions == 0) return std::nullopt;
  const int m = static_cast<int>(lines.size());

  // line pick proportional to w_i
  const long long w_sum = 2 * bo.total_inversions;
  long long r = static_cast<long long>(rng.below(static_cast<std::uint64_t>(w_sum)));
  int i = 0;
  while (i < m && r >= bo.per_line_inversions[i]) r -= bo.per_line_inversions[i++];
  if (i >= m) throw Error("sample_vertex_2d: weight bookkeeping broke");

  // the crossings of line i inside R are exactly its discordant partners
  std::vector<int> rank_s(m), rank_e(m);
  for (int p = 0; p < m; ++p) rank_s[bo.start_order[p]] = p;
  for (int p = 0; p < m; ++p) rank_e[bo.end_order[p]] = p;
  std::vector<int> partners;
  partners.reserve(static_cast<size_t>(bo.per_line_inversions[i]));
  for (int j = 0; j < m; ++j) {
    if (j == i) continue;
    if ((rank_s[i] < rank_s[j]) != (rank_e[i] < rank_e[j])) partners.push_back(j);
  }
  if (partners.empty()) throw Error("sample_vertex_2d: picked line has no crossings");
  const int j = partners[rng.below(partners.size())];
  return vertex_from_lines(arr, lines, i, j);
}

namespace {

Arrangement tail_arrangement(const Arrangement& arr, int from) {
  Arrangement out;
  out.dim = arr.dim;
  out.coordinate_map = arr.coordinate_map;
  out.eliminations = arr.eliminations;
  out.degenerate_drops = arr.degenerate_drops;
  out.hyperplanes.assign(arr.hyperplanes.begin() + from, arr.hyperplanes.end());
  return out;
}

}  // namespace

long long count_vertices(const Arrangement& arr, const SearchInterval& R) {
  if (arr.dim < 2) throw Error("count_vertices: dim must be >= 2");
  if (arr.dim == 2) return boundary_orders(arr, R).total_inversions;

  const int m = static_cast<int>(arr.hyperplanes.size());
  if ((arr.dim - 1) * std::log(std::max(2.0, static_cast<double>(m))) > std::log(1e8)) {
    throw GuardError("count_vertices: n^(dim-1) beyond desk scale");
  }
  long long total = 0;
  for (int i = 0; i + arr.dim - 1 < m; ++i) {
    // vertices whose lowest-indexed hyperplane is i
    Arrangement tail = tail_arrangement(arr, i);
    try {
      total += count_vertices(restrict_onto(tail, 0), R);
    } catch (const DegenerateError&) {
      // unusable pivot row; a perturbed instance will not produce these
    }
  }
  return total;
}

std::optional<Vertex> sample_vertex(const Arrangement& arr, const SearchInterval& R, Rng& rng) {
  if (arr.dim == 2) return sample_vertex_2d(arr, R, rng);
  const int m = static_cast<int>(arr.hyperplanes.size());
  std::vector<long long> w(m, 0);
  long long total = 0;
  std::vector<std::optional<Arrangement>> restricted(m);
  for (int i = 0; i < m; ++i) {
    try {
      restricted[i] = restrict_onto(arr, i);
      w[i] = count_vertices(*restricted[i], R);
    } catch (const DegenerateError&) {
      w[i] = 0;
    }
    total += w[i];
  }
  if (total == 0) return std::nullopt;
  long long r = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
  int i = 0;
  while (i < m && r >= w[i]) r -= w[i++];
  return sample_vertex(*restricted[i], R, rng);
}

SplitScan binary_search_split_2d(const Dataset& ds, Quantile tau, double v) {
  if (ds.d() != 2) throw Error("binary_search_split_2d: d must be 2");
  const int n = ds.n();
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = ds.y(i) - v * ds.x(i, 0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (c[a] != c[b]) return c[a] < c[b];
    return a < b;
  });

  std::vector<double> memo(n, std::numeric_limits<double>::quiet_NaN());
  auto g = [&](int t) {
    if (std::isnan(memo[t])) {
      Vector beta(2);
      beta << c[perm[t]], v;
      memo[t] = compute_score(ds, tau, beta).objective;
    }
    return memo[t];
  };

  int lo = 0, hi = n - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (g(mid) > g(mid + 1)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }

  SplitScan scan;
  scan.score = g(lo);
  scan.z2 = c[perm[lo]];
  const double tol = 1e-9 * std::max(1.0, std::abs(scan.z2));
  for (int i = 0; i < n; ++i) {
    if (std::abs(c[i] - scan.z2) <= tol) scan.minima_ids.push_back(i);
  }
  return scan;
}

namespace {

// nearest crossings of raw dual line `id` strictly left/right of v
struct SideNeighbors {
  int left = -1, right = -1;
  double left_x = -kInf, right_x = kInf;
};

SideNeighbors scan_neighbors_2d(const Dataset& ds, int id, double v) {
  SideNeighbors nb;
  const double tol = 1e-12 * std::max(1.0, std::abs(v));
  for (int j = 0; j < ds.n(); ++j) {
    if (j == id) continue;
    const double denom = ds.x(j, 0) - ds.x(id, 0);
    if (denom == 0.0) continue;
    const double xj = (ds.y(j) - ds.y(id)) / denom;
    if (!std::isfinite(xj)) continue;
    if (xj < v - tol && xj > nb.left_x) {
      nb.left_x = xj;
      nb.left = j;
    } else if (xj > v + tol && xj < nb.right_x) {
      nb.right_x = xj;
      nb.right = j;
    }
  }
  return nb;
}

Vector beta_2d(double icept, double slope) {
  Vector b(2);
  b << icept, slope;
  return b;
}

}  // namespace

SplitOutcome compute_interval_2d(const Dataset& ds, Quantile tau, const SearchInterval&,
                                 double v, const SplitScan& scan) {
  SplitOutcome out;
  out.score = scan.score;
  out.beta = beta_2d(scan.z2, v);
  out.support = scan.minima_ids;
  const double eps = 1e-12 * std::max(1.0, std::abs(scan.score));

  struct Equal {
    Vector beta;
    std::vector<int> support;
  };
  std::optional<Equal> equal_vertex;

  for (int id : scan.minima_ids) {
    const SideNeighbors nb = scan_neighbors_2d(ds, id, v);
    for (const auto& [j, xj] : {std::pair{nb.left, nb.left_x}, std::pair{nb.right, nb.right_x}}) {
      if (j < 0) continue;
      const double z2 = ds.y(id) - ds.x(id, 0) * xj;
      const Vector nbeta = beta_2d(z2, xj);
      const double obj = compute_score(ds, tau, nbeta).objective;
      if (obj < scan.score - eps) {
        out.verdict = xj < v ? SplitVerdict::Left : SplitVerdict::Right;
        return out;
      }
      if (!equal_vertex && obj <= scan.score + eps) {
        equal_vertex = Equal{nbeta, {std::min(id, j), std::max(id, j)}};
      }
    }
  }

  out.verdict = SplitVerdict::Optimal;
  if (static_cast<int>(out.support.size()) < ds.d() && equal_vertex) {
    // flat optimum interior to an edge: adopt the equal-valued endpoint
    // so the support names d points
    out.beta = equal_vertex->beta;
    out.support = equal_vertex->support;
    out.score = compute_score(ds, tau, out.beta).objective;
  } else if (static_cast<int>(out.support.size()) > ds.d()) {
    out.support.resize(ds.d());
  }
  return out;
}

Dataset reduce_dataset(const Dataset& ds, double v) {
  if (ds.d() < 2) throw Error("reduce_dataset: d must be >= 2");
  const int n = ds.n();
  const int k = ds.d() - 1;
  Matrix pred(n, k - 1);
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    for (int m = 1; m < k; ++m) pred(i, m - 1) = ds.x(i, m);
    y(i) = ds.y(i) - v * ds.x(i, 0);
  }
  return Dataset(std::move(pred), std::move(y), ds.has_intercept());
}

namespace {

Solution randqr_impl(const Dataset& ds, Quantile tau, Rng rng, std::ostream* trace);

Vector unreduce_beta(const Vector& sub_beta, double v) {
  const int d = static_cast<int>(sub_beta.size()) + 1;
  Vector beta(d);
  beta(0) = sub_beta(0);
  beta(1) = v;
  for (int m = 2; m < d; ++m) beta(m) = sub_beta(m - 1);
  return beta;
}

}  // namespace

SplitOutcome split_dd(const Dataset& ds, Quantile tau, double v, Rng& rng) {
  const int d = ds.d();
  if (d < 3) throw Error("split_dd: d must be >= 3");

  const Dataset reduced = reduce_dataset(ds, v);
  const Solution sub = randqr_impl(reduced, tau, rng.fork(), nullptr);

  SplitOutcome out;
  out.beta = unreduce_beta(sub.beta, v);
  out.score = compute_score(ds, tau, out.beta).objective;
  out.support = sub.support_ids;
  const double eps = 1e-12 * std::max(1.0, std::abs(out.score));
  const Vector zstar = dual_from_beta(out.beta);

  // dual rows of the d-1 support points
  const int s = static_cast<int>(out.support.size());
  Matrix duals(s, d);
  Vector rhs(s);
  for (int r = 0; r < s; ++r) {
    const auto h = dual_of_point(ds, out.support[r]);
    duals.row(r) = h.coeffs.transpose();
    rhs(r) = h.rhs;
  }

  // the d lines through the minimum: drop one constraint at a time from
  // {support duals} + {plane z1 = v}
  std::vector<Vector> dirs;
  {
    Eigen::FullPivLU<Matrix> lu(duals);
    lu.setThreshold(1e-12);
    const Matrix kernel = lu.kernel();
    if (kernel.cols() != 1) {
      throw DegenerateError("split_dd: support duals do not meet in a line");
    }
    Vector u = kernel.col(0);
    if (std::abs(u(0)) <= 1e-12 * u.norm()) {
      throw DegenerateError("split_dd: transversal line parallel to the splitting plane");
    }
    dirs.push_back(u / u(0));  // parameter equals the z1 offset
  }
  for (int drop = 0; drop < s; ++drop) {
    Matrix cons(s, d);
    cons.row(0) = Vector::Unit(d, 0).transpose();  // z1 fixed
    int r = 1;
    for (int t = 0; t < s; ++t) {
      if (t != drop) cons.row(r++) = duals.row(t);
    }
    Eigen::FullPivLU<Matrix> lu(cons);
    lu.setThreshold(1e-12);
    const Matrix kernel = lu.kernel();
    if (kernel.cols() != 1) continue;  // degenerate in-plane direction
    dirs.push_back(kernel.col(0).normalized());
  }

  std::optional<std::pair<Vector, std::vector<int>>> equal_vertex;
  const double tt = 1e-12 * std::max(1.0, std::abs(v));
  for (size_t line = 0; line < dirs.size(); ++line) {
    const Vector& u = dirs[line];
    const bool transversal = line == 0;
    double best_pos = kInf, best_neg = -kInf;
    int id_pos = -1, id_neg = -1;
    for (int j = 0; j < ds.n(); ++j) {
      if (std::find(out.support.begin(), out.support.end(), j) != out.support.end()) continue;
      const auto h = dual_of_point(ds, j);
      const double du = h.coeffs.dot(u);
      if (std::abs(du) <= 1e-12 * std::max(1.0, h.coeffs.norm() * u.norm())) continue;
      const double t = (h.rhs - h.coeffs.dot(zstar)) / du;
      if (!std::isfinite(t)) continue;
      if (t > tt && t < best_pos) {
        best_pos = t;
        id_pos = j;
      } else if (t < -tt && t > best_neg) {
        best_neg = t;
        id_neg = j;
      }
    }
    for (const auto& [t, j] : {std::pair{best_neg, id_neg}, std::pair{best_pos, id_pos}}) {
      if (j < 0) continue;
      const Vector z = zstar + t * u;
      const Vector nbeta = beta_from_dual(z);
      const double obj = compute_score(ds, tau, nbeta).objective;
      if (obj < out.score - eps) {
        if (!transversal) {
          // recursion already minimized over the plane; an in-plane
          // improvement means the instance is numerically degenerate
          throw DegenerateError("split_dd: in-plane neighbor beats the recursive minimum");
        }
        out.verdict = t < 0.0 ? SplitVerdict::Left : SplitVerdict::Right;
        return out;
      }
      if (transversal && !equal_vertex && obj <= out.score + eps) {
        std::vector<int> sup = out.support;
        sup.push_back(j);
        std::sort(sup.begin(), sup.end());
        equal_vertex = {nbeta, std::move(sup)};
      }
    }
  }

  out.verdict = SplitVerdict::Optimal;
  if (static_cast<int>(out.support.size()) < d && equal_vertex) {
    out.beta = equal_vertex->first;
    out.support = equal_vertex->second;
    out.score = compute_score(ds, tau, out.beta).objective;
  }
  return out;
}

namespace {

Solution solve_1d(const Dataset& ds, Quantile tau) {
  const int n = ds.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (ds.y(a) != ds.y(b)) return ds.y(a) < ds.y(b);
    return a < b;
  });
  // smallest response where the cumulative weight reaches tau*n
  const double r = tau.tau * n;
  int m = static_cast<int>(std::ceil(r - 1e-9 * n));
  m = std::clamp(m, 1, n);
  Solution sol;
  sol.beta = Vector::Constant(1, ds.y(perm[m - 1]));
  sol.objective = compute_score(ds, tau, sol.beta).objective;
  sol.support_ids = {perm[m - 1]};
  sol.stats.vertices_visited = 1;
  sol.stats.iterations = 1;
  return sol;
}

const char* verdict_name(SplitVerdict v) {
  switch (v) {
    case SplitVerdict::Left:
      return "Left";
    case SplitVerdict::Right:
      return "Right";
    default:
      return "Optimal";
  }
}

// completes a short support list with further zero-residual points
void complete_support(const Dataset& ds, const Vector& beta, std::vector<int>& support) {
  const double tol = std::max(residual_zero_tol(ds), 1e-9);
  for (int i = 0; i < ds.n() && static_cast<int>(support.size()) < ds.d(); ++i) {
    if (std::find(support.begin(), support.end(), i) != support.end()) continue;
    if (std::abs(ds.residual(i, beta)) <= tol * std::max(1.0, std::abs(ds.y(i)))) {
      support.push_back(i);
    }
  }
  std::sort(support.begin(), support.end());
}

Solution randqr_impl(const Dataset& ds, Quantile tau, Rng rng, std::ostream* trace) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = ds.n();
  const int d = ds.d();
  if (n < d) throw Error("randqr_solve: need n >= d");
  if (d == 1) return solve_1d(ds, tau);

  const Arrangement arr = dual_arrangement(ds);
  SearchInterval R = SearchInterval::all();

  std::optional<SplitOutcome> best;
  long iterations = 0;
  long sampled = 0;
  const long guard =
      64L * d * static_cast<long>(std::ceil(std::log2(std::max(2.0, static_cast<double>(n)))));

  auto assemble = [&](const SplitOutcome& chosen) {
    Solution sol;
    sol.beta = chosen.beta;
    sol.objective = compute_score(ds, tau, sol.beta).objective;
    sol.support_ids = chosen.support;
    if (static_cast<int>(sol.support_ids.size()) != d) {
      complete_support(ds, sol.beta, sol.support_ids);
    }
    std::sort(sol.support_ids.begin(), sol.support_ids.end());
    sol.stats.iterations = iterations;
    sol.stats.vertices_visited = sampled;
    sol.stats.wall_time_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
    return sol;
  };

  while (iterations < guard) {
    ++iterations;
    const auto vertex = d == 2 ? sample_vertex_2d(arr, R, rng) : sample_vertex(arr, R, rng);
    if (!vertex) {
      // no vertex strictly inside R: the optimum's coordinate was one of
      // the tested v's, whose split minimum is already tracked
      break;
    }
    ++sampled;
    const double v = vertex->coords(0);

    SplitOutcome outcome;
    if (d == 2) {
      outcome = compute_interval_2d(ds, tau, R, v, binary_search_split_2d(ds, tau, v));
    } else {
      outcome = split_dd(ds, tau, v, rng);
    }
    if (!best || outcome.score < best->score) best = outcome;

    if (trace) {
      *trace << iterations << ',' << v << ',' << count_vertices(arr, R) << ','
             << verdict_name(outcome.verdict) << ',' << best->score << '\n';
    }

    if (outcome.verdict == SplitVerdict::Optimal) return assemble(outcome);
    if (outcome.verdict == SplitVerdict::Left) {
      R.hi = v;
    } else {
      R.lo = v;
    }
  }
  if (iterations >= guard) {
    throw GuardError("randqr_solve: iteration guard exceeded");
  }
  if (!best) {
    throw DegenerateError("randqr_solve: arrangement has no vertices");
  }
  return assemble(*best);
}

}  // namespace

Solution randqr_solve(const Dataset& ds, Quantile tau, std::uint64_t seed, std::ostream* trace) {
  if (trace) *trace << "iteration,v,s_in,decision,best_objective\n";
  try {
    return randqr_impl(ds, tau, Rng(seed), trace);
  } catch (const DegenerateError&) {
  } catch (const GuardError&) {
  }
  // perturb-and-retry once; report beta and objective against the input
  const Dataset shaken = perturb(ds, 1e-9, seed ^ 0x9e3779b97f4a7c15ull);
  Solution sol = randqr_impl(shaken, tau, Rng(seed), trace);
  if (static_cast<int>(sol.support_ids.size()) == ds.d()) {
    if (auto v = vertex_from_subset(ds, sol.support_ids)) sol.beta = v->beta();
  }
  sol.objective = compute_score(ds, tau, sol.beta).objective;
  return sol;
}

}  // namespace qreg
