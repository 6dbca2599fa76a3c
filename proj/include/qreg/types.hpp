#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace qreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input (CSV parse failures, bad cells, ragged rows).
struct ParseError : Error {
  using Error::Error;
};

/// A desk-scale or iteration guard tripped.
struct GuardError : Error {
  using Error::Error;
};

/// Geometric degeneracy that a perturbation is expected to remove
/// (coincident crossings, all-singular subsets, ...).
struct DegenerateError : Error {
  using Error::Error;
};

}  // namespace qreg
