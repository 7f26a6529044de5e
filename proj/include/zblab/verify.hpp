#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zblab/dynamics.hpp"

// Self-contained invariant suite: Clifford table, spectrum sweep, projector
// algebra, eigenstate residuals, closed-form-vs-oracle dynamics, interference
// and selection theorems. Used by the CLI `verify` subcommand.

namespace zblab {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured residual or magnitude
    double threshold = 0.0;
    bool greater_is_pass = false;  // false: value <= threshold, true: value >= threshold
    bool pass = false;
};

struct VerifyOptions {
    std::uint64_t seed = 20240915;
    double perturb = 0.0;  // noise amplitude injected into alpha_1 (fault self-test)
    int sweep_points_per_axis = 11;
    int random_draws = 50;
};

std::vector<std::string> verify_check_names();

std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

std::string format_report(const std::vector<CheckResult>& results);

}  // namespace zblab
