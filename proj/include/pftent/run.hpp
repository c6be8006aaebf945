#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pftent/cone.hpp"
#include "pftent/driving.hpp"

namespace pftent {

struct RunConfig {
  std::string command;  // markov | bound | simulate | ly-sweep | eta-check | schedule
  DrivingStream driving = make_constant_driving(1.0, 1.0);
  ConeParams<double> cone = default_cone();
  std::string mode = "float";  // rational | float (ly-sweep only)
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty = stdout

  // markov
  int n_lo = 5;
  int n_hi = 12;
  bool emit_graph = false;
  // simulate / eta-check / schedule
  std::int64_t omega_index = 0;
  int steps = 400;
  int renorm_every = 1;
  int burn_in = 0;
  int depth = 60;
  int samples = 10000;
  int horizon = 1000;
  int k_P = 0;      // 0: derive from spectral_gap_bound
  double D_P = 0;   // 0: derive from spectral_gap_bound
  std::vector<double> kappas;  // asymptotic ladder for `bound`
};

RunConfig run_config_from_json(const nlohmann::json& j);

// Executes the command, writing to cfg.out_path or `fallback`.  Returns the
// process exit code contract: 0 success; throws ConfigError (1) or
// NumericalError (2) otherwise.
int run(const RunConfig& cfg, std::ostream& fallback);

}  // namespace pftent
