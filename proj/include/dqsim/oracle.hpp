#pragma once

// Brute-force reference solvers, deliberately independent of the closed
// forms in dynamics.hpp: a fixed-step integrator for the memory-kernel
// equation of motion and a full discretized-reservoir evolution.

#include <array>
#include <vector>

#include "dqsim/dynamics.hpp"
#include "dqsim/model.hpp"

namespace dqsim {

// Uniformly spaced reservoir modes with couplings g_k^2 = J(mode) * spacing.
struct DiscretizedReservoir {
    std::vector<double> mode_offsets; // detuning of each mode from the qubit
    std::vector<double> couplings;    // g_k >= 0
    double window = 0.0;              // half-width of the covered band

    double coupling_sum_sq() const; // approximates the full band power, gamma*lambda/2
};

// window <= 0 picks the preset 40*lambda + 10*(dressed freq + |detunings|),
// wide enough for every spectral feature at the default parameter scales.
DiscretizedReservoir make_reservoir(const DressedFrame& frame, int mode_count = 4000,
                                    double window = 0.0);

enum class VolterraMethod {
    AuxiliaryOde,         // exact reduction of the memory kernel to a local pair
    TrapezoidConvolution, // direct history summation, second-order stepping
};

struct SolverSettings {
    double step = 0.0; // fine-grid step; <= 0 selects a preset per solver
    VolterraMethod method = VolterraMethod::AuxiliaryOde;
    // Recorded per-mode histories for discretized_mode_solve (indices into
    // the reservoir arrays).
    std::vector<int> probe_modes;
};

// Integro-differential amplitude equation solved on a uniform time grid
// starting at 0. AuxiliaryOde uses the classical 4-stage Runge-Kutta scheme
// on the exact local reduction; TrapezoidConvolution re-sums the full memory
// integral each step. Throws std::invalid_argument when the step violates
// step * max(lambda, dressed frequency, |splitting|, gamma) <= 0.05.
AmplitudeTrajectory volterra_solve(const DressedFrame& frame, const std::vector<double>& t_grid,
                                   const SolverSettings& settings = {});

struct DiscretizedModeResult {
    AmplitudeTrajectory amplitude;          // qubit amplitude at the grid times
    std::vector<cplx> final_modes;          // mode amplitudes at the last grid time
    std::vector<double> norm_error;         // |total norm - 1| at the grid times
    double max_norm_drift = 0.0;
    std::vector<std::vector<cplx>> probes;  // histories of settings.probe_modes
};

// Joint qubit + N-mode Schrodinger evolution (single-excitation sector) with
// the classical 4-stage Runge-Kutta scheme. Norm drift beyond 1e-3 signals
// an unresolved reservoir and raises ResolutionError.
DiscretizedModeResult discretized_mode_solve(const DressedFrame& frame,
                                             const DiscretizedReservoir& reservoir,
                                             const std::vector<double>& t_grid,
                                             const SolverSettings& settings = {});

// Entropy of the field computed from the Schmidt decomposition of the joint
// single-excitation state: qubit_weights are the amplitudes on |E,vacuum>
// and |G,vacuum>, mode_amplitudes those on |G, one photon in mode k>.
// Throws NormalizationError when the joint norm deviates from 1 by > 1e-6.
double schmidt_field_entropy(const std::vector<cplx>& mode_amplitudes,
                             const std::array<cplx, 2>& qubit_weights);

} // namespace dqsim
