#pragma once

// Flat key=value run configuration shared by every CLI command. All rates are
// multiples of gamma; times are multiples of 1/gamma; angles are radians.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dqsim/entanglement.hpp"
#include "dqsim/model.hpp"

namespace dqsim {

struct ScenarioConfig {
    double gamma = 1.0;
    double lambda = 0.1;        // cavity linewidth / gamma
    double omega = 0.0;         // Rabi amplitude / gamma
    double delta_drive = 0.0;   // qubit-drive detuning / gamma
    double delta_cavity = 0.0;  // qubit-cavity detuning / gamma
    double theta = 0.0;         // first qubit Bloch polar angle
    double phi = 0.0;           // first qubit Bloch azimuth
    double theta2 = 0.0;        // second qubit (swap / power commands)
    double phi2 = 0.0;
    double t_max = 25.0;        // time span in units of 1/gamma
    int t_steps = 501;          // samples on [0, t_max]
    double dk_min = -1.5;       // spectrum grid in units of gamma
    double dk_max = 1.5;
    int dk_steps = 2001;
    PowerMethod power_method = PowerMethod::Quadrature;
    std::uint64_t power_samples = 1'000'000;
    std::uint64_t seed = 42;
    std::string out_prefix = "dqsim";

    void validate() const; // throws ConfigError naming the offending key

    SystemParams system_params() const;
    DressedFrame frame() const;
    QubitInitialState first_qubit() const;
    QubitInitialState second_qubit() const;
    std::vector<double> time_grid() const;      // absolute times (gamma t / gamma)
    std::vector<double> detuning_grid() const;  // absolute detunings
};

// Parses the flat key=value format: one assignment per line, '#' comments,
// blank lines ignored, later assignments override earlier ones. Unknown keys,
// malformed numbers, and range violations raise ConfigError with the key name
// and line number.
ScenarioConfig parse_config(std::string_view text);

// Applies a single "key=value" override (CLI --set); same validation rules.
void apply_override(ScenarioConfig& config, std::string_view assignment);

// Applies the DQSIM_SEED environment variable if present; malformed values
// raise ConfigError.
void apply_environment_seed(ScenarioConfig& config);

// One "key = value" line per config key, for CSV metadata echoes.
std::vector<std::string> echo_lines(const ScenarioConfig& config);

} // namespace dqsim
