#pragma once

// CSV-producing CLI commands (everything except `validate` and `figure`).

#include <string>
#include <vector>

#include "dqsim/config.hpp"

namespace dqsim {

enum class Command { Amplitude, Spectrum, Entropy, Swap, Power };

// Runs one command against the config and writes "<out_prefix>_<name>.csv".
// Returns the written paths.
std::vector<std::string> run_scenario_command(Command command, const ScenarioConfig& config);

} // namespace dqsim
