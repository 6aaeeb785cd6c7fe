#pragma once

#include <string>
#include <vector>

#include "refl1d/config.hpp"

namespace refl1d {

// Command bodies shared by the CLI and the tests. Each returns the process
// exit code and reports errors as machine-readable JSON on stdout.
int cmd_hugoniot(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg, const std::vector<double>& epsilons);

// deterministic content checksum recorded in summary.json (FNV-1a 64)
std::string fnv1a64_hex(const std::string& bytes);

// 17-significant-digit float formatting used by every CSV writer
std::string format_double(double x);

}  // namespace refl1d
