#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qreg/oracle.hpp"

namespace qreg {

enum class Algo { Oracle, Neighbor, KSet, RandQR };

/// Parses one of "oracle", "neighbor", "kset", "randqr".
Algo parse_algo(const std::string& name);
std::string algo_name(Algo algo);

/// Runs one solver. A positive perturb_magnitude applies the
/// general-position perturbation up front; beta and objective are then
/// re-evaluated against the unperturbed data.
Solution dispatch_solve(Algo algo, const Dataset& ds, Quantile tau, std::uint64_t seed,
                        double perturb_magnitude = 0.0, std::ostream* trace = nullptr);

}  // namespace qreg
