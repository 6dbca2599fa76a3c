#include "qreg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qreg {

namespace {
constexpr double kSingularTol = 1e-12;
}

Vector dual_from_beta(const Vector& beta) {
  const int d = static_cast<int>(beta.size());
  Vector z(d);
  z.head(d - 1) = beta.tail(d - 1);
  z(d - 1) = beta(0);
  return z;
}

Vector beta_from_dual(const Vector& z) {
  const int d = static_cast<int>(z.size());
  Vector beta(d);
  beta(0) = z(d - 1);
  beta.tail(d - 1) = z.head(d - 1);
  return beta;
}

DualHyperplane dual_of_point(const Vector& predictors, double response, int id) {
  const int d = static_cast<int>(predictors.size()) + 1;
  DualHyperplane h;
  h.coeffs.resize(d);
  h.coeffs.head(d - 1) = predictors;
  h.coeffs(d - 1) = 1.0;
  h.rhs = response;
  if (id >= 0) h.source_ids = {id};
  return h;
}

DualHyperplane dual_of_point(const Dataset& ds, int i) {
  return dual_of_point(ds.predictors().row(i).transpose(), ds.y(i), i);
}

Arrangement dual_arrangement(const Dataset& ds) {
  Arrangement arr;
  arr.dim = ds.d();
  arr.coordinate_map.resize(arr.dim);
  for (int c = 0; c < arr.dim; ++c) arr.coordinate_map[c] = c;
  arr.hyperplanes.reserve(ds.n());
  for (int i = 0; i < ds.n(); ++i) arr.hyperplanes.push_back(dual_of_point(ds, i));
  return arr;
}

std::optional<Vertex> vertex_from_subset(const Dataset& ds, std::span<const int> ids) {
  const int d = ds.d();
  if (static_cast<int>(ids.size()) != d) throw Error("vertex_from_subset needs exactly d ids");
  Matrix a(d, d);
  Vector b(d);
  for (int r = 0; r < d; ++r) {
    a.row(r) = ds.design_row(ids[r]).transpose();
    b(r) = ds.y(ids[r]);
  }
  Eigen::FullPivLU<Matrix> lu(a);
  lu.setThreshold(kSingularTol);
  if (!lu.isInvertible()) return std::nullopt;
  Vertex v;
  v.coords = dual_from_beta(lu.solve(b));
  v.defining_ids.assign(ids.begin(), ids.end());
  std::sort(v.defining_ids.begin(), v.defining_ids.end());
  return v;
}

std::optional<std::pair<double, double>> intersect_2d(const DualHyperplane& a,
                                                      const DualHyperplane& b) {
  if (a.coeffs.size() != 2 || b.coeffs.size() != 2) throw Error("intersect_2d needs 2D lines");
  const double det = a.coeffs(0) * b.coeffs(1) - a.coeffs(1) * b.coeffs(0);
  const double scale = std::abs(a.coeffs(0) * b.coeffs(1)) + std::abs(a.coeffs(1) * b.coeffs(0));
  if (std::abs(det) <= kSingularTol * std::max(scale, 1e-300)) return std::nullopt;
  const double z1 = (a.rhs * b.coeffs(1) - b.rhs * a.coeffs(1)) / det;
  const double z2 = (a.coeffs(0) * b.rhs - b.coeffs(0) * a.rhs) / det;
  return std::make_pair(z1, z2);
}

Arrangement restrict_onto(const Arrangement& arr, int onto) {
  if (arr.dim < 2) throw Error("restrict_onto needs dim >= 2");
  if (onto < 0 || onto >= static_cast<int>(arr.hyperplanes.size())) {
    throw Error("restrict_onto: hyperplane index out of range");
  }
  const DualHyperplane& pivot_plane = arr.hyperplanes[onto];

  // Pivot: largest coefficient over the non-search coordinates (slot 0 is
  // the search coordinate and is never eliminated).
  int p = -1;
  double best = 0.0;
  for (int s = 1; s < arr.dim; ++s) {
    const double mag = std::abs(pivot_plane.coeffs(s));
    if (mag > best) {
      best = mag;
      p = s;
    }
  }
  if (p < 0 || best < kSingularTol * std::max(pivot_plane.coeffs.norm(), 1e-300)) {
    throw DegenerateError("restrict_onto: hyperplane has no usable pivot coordinate");
  }

  Arrangement out;
  out.dim = arr.dim - 1;
  out.degenerate_drops = arr.degenerate_drops;
  out.coordinate_map = arr.coordinate_map;
  out.coordinate_map.erase(out.coordinate_map.begin() + p);
  out.eliminations = arr.eliminations;
  Elimination e;
  e.coord = arr.coordinate_map[p];
  e.parent_coords = arr.coordinate_map;
  e.coeffs = pivot_plane.coeffs;
  e.rhs = pivot_plane.rhs;
  out.eliminations.push_back(std::move(e));

  out.hyperplanes.reserve(arr.hyperplanes.size() - 1);
  for (int h = 0; h < static_cast<int>(arr.hyperplanes.size()); ++h) {
    if (h == onto) continue;
    const DualHyperplane& src = arr.hyperplanes[h];
    const double alpha = src.coeffs(p) / pivot_plane.coeffs(p);
    Vector nc(out.dim);
    int t = 0;
    for (int s = 0; s < arr.dim; ++s) {
      if (s == p) continue;
      nc(t++) = src.coeffs(s) - alpha * pivot_plane.coeffs(s);
    }
    const double nr = src.rhs - alpha * pivot_plane.rhs;
    const double row_scale =
        src.coeffs.lpNorm<Eigen::Infinity>() +
        std::abs(alpha) * pivot_plane.coeffs.lpNorm<Eigen::Infinity>();
    if (nc.lpNorm<Eigen::Infinity>() <= kSingularTol * std::max(row_scale, 1e-300)) {
      ++out.degenerate_drops;  // parallel to the pivot plane within the slice
      continue;
    }
    DualHyperplane nh;
    nh.coeffs = std::move(nc);
    nh.rhs = nr;
    nh.source_ids = src.source_ids;
    nh.source_ids.insert(nh.source_ids.end(), pivot_plane.source_ids.begin(),
                         pivot_plane.source_ids.end());
    std::sort(nh.source_ids.begin(), nh.source_ids.end());
    nh.source_ids.erase(std::unique(nh.source_ids.begin(), nh.source_ids.end()),
                        nh.source_ids.end());
    out.hyperplanes.push_back(std::move(nh));
  }
  return out;
}

Vector lift(const Arrangement& arr, const Vector& local_coords) {
  if (local_coords.size() != arr.dim) throw Error("lift: wrong local coordinate count");
  const int full_d = arr.dim + static_cast<int>(arr.eliminations.size());
  Vector full(full_d);
  for (int s = 0; s < arr.dim; ++s) full(arr.coordinate_map[s]) = local_coords(s);
  // Each record's parent coordinates are all known once every later
  // elimination has been undone, so walk newest to oldest.
  for (auto it = arr.eliminations.rbegin(); it != arr.eliminations.rend(); ++it) {
    double acc = it->rhs;
    double pivot_coeff = 0.0;
    for (size_t s = 0; s < it->parent_coords.size(); ++s) {
      const int c = it->parent_coords[s];
      if (c == it->coord) {
        pivot_coeff = it->coeffs(static_cast<int>(s));
      } else {
        acc -= it->coeffs(static_cast<int>(s)) * full(c);
      }
    }
    full(it->coord) = acc / pivot_coeff;
  }
  return full;
}

std::vector<Line2> as_lines_2d(const Arrangement& arr) {
  if (arr.dim != 2) throw Error("as_lines_2d needs a 2D arrangement");
  std::vector<Line2> lines;
  lines.reserve(arr.hyperplanes.size());
  for (int h = 0; h < static_cast<int>(arr.hyperplanes.size()); ++h) {
    const auto& hp = arr.hyperplanes[h];
    const double c1 = hp.coeffs(0), c2 = hp.coeffs(1);
    if (std::abs(c2) <= kSingularTol * std::max(hp.coeffs.lpNorm<Eigen::Infinity>(), 1e-300)) {
      continue;  // vertical in this slice; perturbation removes these
    }
    lines.push_back({-c1 / c2, hp.rhs / c2, h});
  }
  return lines;
}

}  // namespace qreg
