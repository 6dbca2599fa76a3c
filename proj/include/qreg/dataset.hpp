#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreg/types.hpp"

namespace qreg {

/// Quantile parameter, strictly inside (0, 1).
struct Quantile {
  double tau;
  explicit Quantile(double t);
};

// A regression instance: n points with d-1 predictors and a response.
// The implied design row is [1, x_1, ..., x_{d-1}], so parameter vectors
// have length d with the intercept first. Immutable after construction.
class Dataset {
 public:
  Dataset(Matrix predictors, Vector response, bool has_intercept = true);

  int n() const { return static_cast<int>(response_.size()); }
  int d() const { return static_cast<int>(predictors_.cols()) + 1; }

  double x(int i, int m) const { return predictors_(i, m); }  // m in [0, d-1)
  double y(int i) const { return response_(i); }
  const Matrix& predictors() const { return predictors_; }
  const Vector& response() const { return response_; }

  /// [1, x_1, ..., x_{d-1}]
  Vector design_row(int i) const;
  /// design_row(i) . beta
  double predict(int i, const Vector& beta) const;
  /// y_i - predict(i)
  double residual(int i, const Vector& beta) const { return y(i) - predict(i, beta); }

  bool has_intercept() const { return has_intercept_; }
  bool perturbed() const { return perturbed_; }
  void mark_perturbed() { perturbed_ = true; }

  /// max |y_i|, or 1 if the response is identically zero.
  double response_scale() const { return response_scale_; }

 private:
  Matrix predictors_;  // n x (d-1)
  Vector response_;    // n
  bool has_intercept_ = true;
  bool perturbed_ = false;
  double response_scale_ = 1.0;
};

struct CsvOptions {
  std::optional<bool> header;     // unset: auto-detect a non-numeric first row
  int response_column = -1;       // -1: last column
};

Dataset load_csv(const std::string& path, const CsvOptions& options = {});
void write_csv(const Dataset& ds, const std::string& path);

/// Deterministic synthetic instance: predictors uniform in [-10, 10],
/// y = X.beta_true + noise, with floor(outlier_fraction * n) points given
/// noise inflated x100.
Dataset generate_synthetic(int n, int d, const Vector& beta_true, double noise_scale,
                           double outlier_fraction, std::uint64_t seed);

/// Relative perturbation realizing the general-position assumption:
/// each coordinate c becomes c*(1+u) + u' with u uniform in +-magnitude and
/// u' uniform in +-magnitude*scale(column), scale = max |column| (1 if zero).
/// magnitude 0 returns the input bitwise-identically.
Dataset perturb(const Dataset& ds, double magnitude, std::uint64_t seed);

}  // namespace qreg
