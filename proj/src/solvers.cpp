#include "qreg/solvers.hpp"

#include "qreg/klevel.hpp"
#include "qreg/randqr.hpp"

namespace qreg {

Algo parse_algo(const std::string& name) {
  if (name == "oracle") return Algo::Oracle;
  if (name == "neighbor") return Algo::Neighbor;
  if (name == "kset") return Algo::KSet;
  if (name == "randqr") return Algo::RandQR;
  throw Error("unknown algorithm '" + name + "' (expected oracle|neighbor|kset|randqr)");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::Oracle:
      return "oracle";
    case Algo::Neighbor:
      return "neighbor";
    case Algo::KSet:
      return "kset";
    default:
      return "randqr";
  }
}

Solution dispatch_solve(Algo algo, const Dataset& ds, Quantile tau, std::uint64_t seed,
                        double perturb_magnitude, std::ostream* trace) {
  const Dataset* input = &ds;
  std::optional<Dataset> shaken;
  if (perturb_magnitude > 0.0) {
    shaken = perturb(ds, perturb_magnitude, seed ^ 0x7f4a7c15ull);
    input = &*shaken;
  }

  Solution sol;
  switch (algo) {
    case Algo::Oracle:
      sol = brute_force_solve(*input, tau);
      break;
    case Algo::Neighbor:
      sol = neighbor_descent_solve_2d(*input, tau);
      break;
    case Algo::KSet:
      sol = qreg2d_solve(*input, tau);
      break;
    case Algo::RandQR:
      sol = randqr_solve(*input, tau, seed, trace);
      break;
  }

  if (shaken) {
    // report against the original data
    if (static_cast<int>(sol.support_ids.size()) == ds.d()) {
      if (auto v = vertex_from_subset(ds, sol.support_ids)) sol.beta = v->beta();
    }
    sol.objective = compute_score(ds, tau, sol.beta).objective;
  }
  return sol;
}

}  // namespace qreg
