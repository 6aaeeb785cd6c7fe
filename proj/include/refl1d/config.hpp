#pragma once

#include <string>

#include <json.hpp>

#include "refl1d/solver.hpp"
#include "refl1d/verify.hpp"

namespace refl1d {

// Flat dotted-key configuration for a run. Unknown keys are errors.
struct RunConfig {
  std::string eos_kind = "polytropic";
  double eos_K = 0.5;
  double eos_gamma = 2.0;

  std::string ahead_kind = "constant";
  double ahead_rho = 1.0;
  double ahead_w = -0.5;
  double ahead_delta = 0.0;
  double ahead_L = 1.0;
  double ahead_T = 0.0;  // 0: default horizon 2 eps (1+a)/eta0

  double epsilon = 0.1;
  int n_sigma = 64;
  int n_tau = 64;

  double tol_value = 1e-11;
  double tol_norm = 1e-8;
  int max_iter = 200;
  int threads = 0;  // 0: runtime default

  VerifyThresholds vt;

  std::string output_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

// text file of `key = value` lines ('#' comments, quoted strings)
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

// JSON echo (summary.json) and its inverse; round-trips exactly
nlohmann::ordered_json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

void validate_config(const RunConfig& cfg);

// assembled problem pieces shared by the commands
struct Problem {
  BarotropicEos eos;
  AheadField ahead;
  ReflectionPointData refl;
  DomainSpec spec;
  SolverConfig solver;
};
Problem build_problem(const RunConfig& cfg);

}  // namespace refl1d
