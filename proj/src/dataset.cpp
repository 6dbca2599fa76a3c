#include "qreg/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qreg/rng.hpp"

namespace qreg {

Quantile::Quantile(double t) : tau(t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw Error("quantile tau must lie strictly inside (0, 1), got " + std::to_string(t));
  }
}

Dataset::Dataset(Matrix predictors, Vector response, bool has_intercept)
    : predictors_(std::move(predictors)),
      response_(std::move(response)),
      has_intercept_(has_intercept) {
  if (response_.size() == 0) throw Error("dataset needs at least one point");
  if (predictors_.rows() != response_.size()) {
    throw Error("predictor row count does not match response length");
  }
  if (!predictors_.allFinite() || !response_.allFinite()) {
    throw Error("dataset coordinates must be finite");
  }
  response_scale_ = response_.cwiseAbs().maxCoeff();
  if (response_scale_ == 0.0) response_scale_ = 1.0;
}

Vector Dataset::design_row(int i) const {
  Vector row(d());
  row(0) = 1.0;
  row.tail(d() - 1) = predictors_.row(i);
  return row;
}

double Dataset::predict(int i, const Vector& beta) const {
  double v = beta(0);
  for (int m = 1; m < d(); ++m) v += beta(m) * predictors_(i, m - 1);
  return v;
}

namespace {

bool parse_cell(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return std::isfinite(out);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool all_numeric(const std::vector<std::string>& cells) {
  double tmp;
  return std::all_of(cells.begin(), cells.end(),
                     [&](const std::string& c) { return parse_cell(c, tmp); });
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto cells = split_row(line);
    if (first_data_row) {
      const bool skip = options.header.has_value() ? *options.header : !all_numeric(cells);
      first_data_row = false;
      if (skip) continue;
    }
    std::vector<double> row(cells.size());
    for (size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], row[c])) {
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                         ": cannot parse '" + cells[c] + "' as a number");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("row " + std::to_string(line_no) + ": has " + std::to_string(row.size()) +
                       " cells, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows in " + path);
  const int width = static_cast<int>(rows.front().size());
  if (width < 2) throw ParseError("need at least 2 columns, got " + std::to_string(width));

  int resp = options.response_column < 0 ? width - 1 : options.response_column;
  if (resp >= width) throw ParseError("response column " + std::to_string(resp) + " out of range");

  const int n = static_cast<int>(rows.size());
  Matrix pred(n, width - 1);
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int c = 0; c < width; ++c) {
      if (c == resp) {
        y(i) = rows[i][c];
      } else {
        pred(i, m++) = rows[i][c];
      }
    }
  }
  return Dataset(std::move(pred), std::move(y));
}

void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  char buf[40];
  for (int i = 0; i < ds.n(); ++i) {
    for (int m = 0; m < ds.d() - 1; ++m) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.x(i, m));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", ds.y(i));
    out << buf << '\n';
  }
}

Dataset generate_synthetic(int n, int d, const Vector& beta_true, double noise_scale,
                           double outlier_fraction, std::uint64_t seed) {
  if (d < 1) throw Error("dimension must be >= 1");
  if (n < d) throw Error("need n >= d points, got n=" + std::to_string(n) +
                         " d=" + std::to_string(d));
  if (beta_true.size() != d) throw Error("beta_true must have d entries");
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw Error("outlier_fraction must lie in [0, 1)");
  }

  Rng rng(seed);
  Matrix pred(n, d - 1);
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < d - 1; ++m) pred(i, m) = rng.uniform(-10.0, 10.0);
  }
  Vector noise(n);
  for (int i = 0; i < n; ++i) noise(i) = rng.normal();

  // Outlier indices drawn after noise, so outlier_fraction=0 leaves the
  // rest of the stream untouched.
  const int n_out = static_cast<int>(std::floor(outlier_fraction * n));
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < n_out; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }

  Vector y(n);
  for (int i = 0; i < n; ++i) {
    double v = beta_true(0);
    for (int m = 1; m < d; ++m) v += beta_true(m) * pred(i, m - 1);
    y(i) = v + noise(i) * noise_scale;
  }
  for (int t = 0; t < n_out; ++t) {
    const int i = idx[t];
    y(i) += noise(i) * noise_scale * 99.0;  // total inflation x100
  }
  return Dataset(std::move(pred), std::move(y));
}

Dataset perturb(const Dataset& ds, double magnitude, std::uint64_t seed) {
  if (magnitude < 0.0) throw Error("perturb magnitude must be >= 0");
  if (magnitude == 0.0) return ds;

  const int n = ds.n();
  const int k = ds.d() - 1;
  Matrix pred = ds.predictors();
  Vector y = ds.response();

  Rng rng(seed);
  auto col_scale = [](const auto& col) {
    const double s = col.cwiseAbs().maxCoeff();
    return s == 0.0 ? 1.0 : s;
  };
  for (int m = 0; m < k; ++m) {
    const double s = col_scale(pred.col(m));
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform(-magnitude, magnitude);
      const double shift = rng.uniform(-magnitude * s, magnitude * s);
      pred(i, m) = pred(i, m) * (1.0 + u) + shift;
    }
  }
  const double sy = col_scale(y);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(-magnitude, magnitude);
    const double shift = rng.uniform(-magnitude * sy, magnitude * sy);
    y(i) = y(i) * (1.0 + u) + shift;
  }
  Dataset out(std::move(pred), std::move(y), ds.has_intercept());
  if (magnitude > 0.0) out.mark_perturbed();
  return out;
}

}  // namespace qreg
