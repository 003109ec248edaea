#pragma once

// Bundled figure presets: fixed parameter sweeps (λ=0.1γ, δ=0, θ=φ=0) that
// regenerate the reference curves as CSV files plus one SVG overlay per panel.

#include <string>
#include <vector>

#include "dqsim/config.hpp"
#include "dqsim/model.hpp"

namespace dqsim {

// Every distinct (Ω, Δ) combination appearing across the bundled presets.
std::vector<SystemParams> figure_parameter_sets(double gamma = 1.0);

// Exact roots of the excited amplitude on (0, t_max]. Non-empty only in the
// underdamped real-amplitude regime (kernel rate real, branch splitting
// imaginary); empty otherwise.
std::vector<double> amplitude_zero_times(const DressedFrame& frame, double t_max);

// Renders figure id ∈ {2,3,4,5,7,8}: one CSV per curve and one SVG per panel,
// all named from base.out_prefix. Returns the written paths in order.
// Unsupported ids raise std::invalid_argument.
std::vector<std::string> run_figure(int id, const ScenarioConfig& base);

} // namespace dqsim
