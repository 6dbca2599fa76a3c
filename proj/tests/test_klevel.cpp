#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qreg/klevel.hpp"
#include "test_helpers.hpp"

using namespace qreg;

namespace {

// classifies every pairwise crossing by the level membership counts
std::set<std::pair<int, int>> level_vertices_by_counting(const std::vector<Line2>& lines,
                                                         int k) {
  const int n = static_cast<int>(lines.size());
  std::set<std::pair<int, int>> verts;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double denom = lines[i].slope - lines[j].slope;
      if (denom == 0.0) continue;
      const double x = (lines[j].icept - lines[i].icept) / denom;
      const double yv = lines[i].at(x);
      int above = 0, below = 0;
      for (int m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        const double v = lines[m].at(x);
        if (v > yv) {
          ++above;
        } else if (v < yv) {
          ++below;
        }
      }
      // point on the arrangement: at most k-1 above and at most n-k below
      if (above <= k - 1 && below <= n - k) verts.insert({i, j});
    }
  }
  return verts;
}

std::vector<Line2> dual_lines(const Dataset& ds) {
  return as_lines_2d(dual_arrangement(ds));
}

}  // namespace

TEST_CASE("two crossing lines have a single 1-level vertex") {
  std::vector<Line2> lines{{1.0, 0.0, 0}, {-1.0, 1.0, 1}};
  int count = 0;
  klevel_sweep_stream(lines, 1, [&](const SweepEvent& ev) {
    ++count;
    CHECK(ev.z1 == doctest::Approx(0.5));
    CHECK(ev.z2 == doctest::Approx(0.5));
  });
  CHECK(count == 1);
}

TEST_CASE("running example level 4 matches the membership classification") {
  const Dataset ds = test::running_example();
  const auto lines = dual_lines(ds);
  const auto expected = level_vertices_by_counting(lines, 4);
  std::set<std::pair<int, int>> got;
  klevel_sweep_stream(lines, 4, [&](const SweepEvent& ev) {
    got.insert({std::min(ev.prev_line, ev.next_line), std::max(ev.prev_line, ev.next_line)});
  });
  CHECK(got == expected);
}

TEST_CASE("sweep vertices satisfy the membership predicate for many k") {
  Rng rng(2);
  for (int inst = 0; inst < 25; ++inst) {
    const int n = 4 + static_cast<int>(rng.below(28));
    const Dataset ds = test::random_instance(n, 2, 7000 + inst);
    const auto lines = dual_lines(ds);
    for (int k : {1, (n + 3) / 4, (n + 1) / 2, n}) {
      if (k < 1 || k > n) continue;
      const auto expected = level_vertices_by_counting(lines, k);
      std::set<std::pair<int, int>> got;
      double last_x = -std::numeric_limits<double>::infinity();
      klevel_sweep_stream(lines, k, [&](const SweepEvent& ev) {
        CHECK(ev.z1 > last_x);  // strictly increasing emission order
        last_x = ev.z1;
        got.insert(
            {std::min(ev.prev_line, ev.next_line), std::max(ev.prev_line, ev.next_line)});
      });
      CHECK(got == expected);
    }
  }
}

TEST_CASE("level n is the lower envelope") {
  Rng rng(8);
  const int n = 24;
  const Dataset ds = test::random_instance(n, 2, 91);
  const auto lines = dual_lines(ds);
  std::vector<double> xs;
  klevel_sweep_stream(lines, n, [&](const SweepEvent& ev) { xs.push_back(ev.z1); });
  CHECK(xs.size() <= static_cast<size_t>(n - 1));
  // spot check midpoints: nothing below the envelope value
  for (size_t t = 0; t + 1 < xs.size(); ++t) {
    const double x = 0.5 * (xs[t] + xs[t + 1]);
    double env = std::numeric_limits<double>::infinity();
    for (const auto& l : lines) env = std::min(env, l.at(x));
    int below = 0;
    for (const auto& l : lines) {
      if (l.at(x) < env) ++below;
    }
    CHECK(below == 0);
  }
  (void)rng;
}

TEST_CASE("between consecutive vertices the level keeps its rank band") {
  const Dataset ds = test::random_instance(20, 2, 123);
  const auto lines = dual_lines(ds);
  const int n = static_cast<int>(lines.size());
  for (int k : {1, n / 2, n}) {
    if (k < 1) continue;
    std::vector<SweepEvent> evs;
    klevel_sweep_stream(lines, k, [&](const SweepEvent& ev) { evs.push_back(ev); });
    for (size_t t = 0; t + 1 < evs.size(); ++t) {
      const double x = 0.5 * (evs[t].z1 + evs[t + 1].z1);
      const int level_line = evs[t].next_line;
      const double yv = lines[level_line].at(x);
      int above = 0, below = 0;
      for (int m = 0; m < n; ++m) {
        if (m == level_line) continue;
        const double v = lines[m].at(x);
        if (v > yv) ++above;
        if (v < yv) ++below;
      }
      CHECK(above <= k - 1);
      CHECK(below <= n - k);
    }
  }
}

TEST_CASE("median level size stays below a fitted multiple of n^(4/3)") {
  // consistency check against the k-set upper bound trend
  std::vector<double> ns, ms;
  for (int n : {256, 512, 1024, 2048}) {
    const Dataset ds = test::random_instance(n, 2, 1234 + n);
    const auto lines = dual_lines(ds);
    long count = 0;
    klevel_sweep_stream(lines, (n + 1) / 2, [&](const SweepEvent&) { ++count; });
    ns.push_back(n);
    ms.push_back(static_cast<double>(count));
  }
  // fit c at the smallest size, check the rest stay under c * n^(4/3)
  const double c = ms[0] / std::pow(ns[0], 4.0 / 3.0);
  for (size_t i = 1; i < ns.size(); ++i) {
    CHECK(ms[i] <= 1.5 * c * std::pow(ns[i], 4.0 / 3.0));
  }
}

TEST_CASE("objective along the path matches a fresh score every 64 vertices") {
  const Dataset ds = test::random_instance(48, 2, 321);
  const Quantile tau(0.5);
  const auto lines = dual_lines(ds);
  const int k = qreg2d_levels(ds.n(), tau).front();

  // replicate the solver's incremental evaluation
  bool first = true;
  int prev_pivot = -1;
  bool prev_above = false;
  std::optional<AggregateTracker> tracker;
  long idx = 0;
  klevel_sweep_stream(lines, k, [&](const SweepEvent& ev) {
    Vector beta(2);
    beta << ev.z2, ev.z1;
    double obj;
    if (first) {
      first = false;
      auto sr = compute_score(ds, tau, beta);
      tracker.emplace(ds, sr.partition);
      obj = sr.objective;
    } else {
      if (!prev_above && tracker->in_plus(prev_pivot)) tracker->apply(Leave{prev_pivot});
      if (!tracker->in_plus(ev.next_line)) tracker->apply(Enter{ev.next_line});
      obj = score_from_aggregates(tracker->state(), tau, beta);
    }
    prev_pivot = ev.prev_line;
    prev_above = ev.from_above;
    if (idx++ % 64 == 0) {
      const double fresh = compute_score(ds, tau, beta).objective;
      CHECK(obj == doctest::Approx(fresh).epsilon(1e-8));
    }
  });
  CHECK(idx > 0);
}

TEST_CASE("qreg2d equals brute force on the running example") {
  const Dataset ds = test::running_example();
  const Solution sol = qreg2d_solve(ds, Quantile(0.5));
  CHECK(sol.objective == doctest::Approx(test::kRunningExampleObjective).epsilon(1e-9));
}

TEST_CASE("qreg2d solves exact-fit data at any tau") {
  Matrix pred(5, 1);
  pred << -2.0, -1.0, 0.0, 1.0, 2.0;
  Vector y = 3.0 * pred.col(0).array() - 1.0;
  const Dataset ds(pred, y);
  for (double t : {0.1, 0.5, 0.77}) {
    const Solution sol = qreg2d_solve(ds, Quantile(t));
    CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("qreg2d equals brute force on 200 random instances") {
  Rng rng(6);
  const double taus[] = {0.1, 0.25, 0.5, 0.9};
  for (int inst = 0; inst < 200; ++inst) {
    const int n = 5 + static_cast<int>(rng.below(56));
    const Dataset ds = test::random_instance(n, 2, 5000 + inst);
    const Quantile tau(taus[inst % 4]);
    const Solution oracle = brute_force_solve(ds, tau);
    const Solution sol = qreg2d_solve(ds, tau);
    CHECK(sol.objective == doctest::Approx(oracle.objective)
                               .epsilon(1e-9)
                               .scale(std::max(1.0, oracle.objective)));
  }
}

TEST_CASE("level index covers asymmetric quantiles") {
  // tau=0.25 on a 3-point instance whose optimum is NOT on level ceil(tau*n)
  Matrix pred(3, 1);
  pred << 0.0, 1.0, 2.0;
  Vector y(3);
  y << 0.0, 10.0, 1.0;
  const Dataset ds(pred, y);
  const Quantile tau(0.25);
  const Solution oracle = brute_force_solve(ds, tau);
  const Solution sol = qreg2d_solve(ds, tau);
  CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
  CHECK(qreg2d_levels(3, tau) == std::vector<int>{3});
}
