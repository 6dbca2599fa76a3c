#include "qreg/report.hpp"

#include <json.hpp>

namespace qreg {

RunReport make_report(const std::string& algorithm, const Dataset& ds, double tau,
                      std::uint64_t seed, double perturb_magnitude, const Solution& sol) {
  RunReport r;
  r.algorithm = algorithm;
  r.n = ds.n();
  r.d = ds.d();
  r.tau = tau;
  r.seed = seed;
  r.beta.assign(sol.beta.data(), sol.beta.data() + sol.beta.size());
  r.objective = sol.objective;
  r.support_ids = sol.support_ids;
  r.wall_time_ms = sol.stats.wall_time_ms;
  r.vertices_visited = sol.stats.vertices_visited;
  r.perturb_magnitude = perturb_magnitude;
  return r;
}

std::string to_json(const RunReport& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["n"] = r.n;
  j["d"] = r.d;
  j["tau"] = r.tau;
  j["seed"] = r.seed;
  j["beta"] = r.beta;
  j["objective"] = r.objective;
  j["support_ids"] = r.support_ids;
  j["wall_time_ms"] = r.wall_time_ms;
  j["vertices_visited"] = r.vertices_visited;
  j["perturb_magnitude"] = r.perturb_magnitude;
  return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RunReport r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.n = j.at("n").get<int>();
  r.d = j.at("d").get<int>();
  r.tau = j.at("tau").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.beta = j.at("beta").get<std::vector<double>>();
  r.objective = j.at("objective").get<double>();
  r.support_ids = j.at("support_ids").get<std::vector<int>>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  r.vertices_visited = j.at("vertices_visited").get<long>();
  r.perturb_magnitude = j.at("perturb_magnitude").get<double>();
  return r;
}

}  // namespace qreg
