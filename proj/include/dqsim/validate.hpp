#pragma once

// Cross-validation suite wiring the closed forms against the brute-force
// solvers; backs the `validate` CLI command.

#include <iosfwd>
#include <string>
#include <vector>

#include "dqsim/config.hpp"

namespace dqsim {

struct ValidationRow {
    std::string name;
    double observed = 0.0; // measured error / ratio, see `limit`
    std::string limit;     // human-readable acceptance bound
    bool pass = false;
};

// strict=false runs a quick subset (seconds); strict=true sweeps every
// bundled parameter set at full spans (a few minutes).
std::vector<ValidationRow> run_validation_suite(const ScenarioConfig& config, bool strict);

// Prints the table to `out`; returns the number of failing rows.
int run_validate(const ScenarioConfig& config, bool strict, std::ostream& out);

} // namespace dqsim
