#pragma once

// Closed-form time evolution of the dressed qubit amplitude and of the
// per-mode photon amplitudes, plus the reduced qubit density matrix.

#include <vector>

#include "dqsim/model.hpp"

namespace dqsim {

// Survival amplitude of the dressed excited state, value 1 at t = 0.
// Evaluated in an overflow-safe two-exponential form; the confluent case of
// vanishing branch splitting is handled through its explicit limit.
// Throws std::domain_error for t < 0.
cplx excited_amplitude(const DressedFrame& frame, double t);

// Coefficient (1/2 + sign * kernel_rate / splitting) of decay branch `sign`.
// Requires a nonzero splitting; use photon_amplitude_normalized for the
// confluent case.
cplx branch_coefficient(const DressedFrame& frame, int sign);

// One branch of the time-integrated emission amplitude of the reservoir mode
// detuned by delta_k from the qubit. The pair sum times coupling_weight()
// gives the photon amplitude per unit coupling. Removable zeros of the
// denominator are evaluated by their series limit.
cplx mode_integral(const DressedFrame& frame, double delta_k, double t, int sign);

// t -> infinity limit of mode_integral; only meaningful when both branches
// decay (checked by the spectrum module, not here).
cplx mode_integral_infinity(const DressedFrame& frame, double delta_k, int sign);

// coupling_weight() * (both branches of mode_integral summed); safe for all
// parameter values including a vanishing branch splitting.
cplx photon_amplitude_normalized(const DressedFrame& frame, double delta_k, double t);

// Reduced qubit state in the dressed product basis {|E>, |G>}.
struct ReducedDensityMatrix {
    cplx ee{0.0, 0.0};
    cplx eg{0.0, 0.0};
    cplx ge{0.0, 0.0};
    cplx gg{0.0, 0.0};

    double trace_real() const noexcept { return ee.real() + gg.real(); }
    // Eigenvalues (ascending); meaningful for Hermitian input.
    void eigenvalues(double& lo, double& hi) const;
    // Hermiticity, unit trace, positivity within tol (throws std::domain_error).
    void validate(double tol = 1e-9) const;
};

// State of the qubit at time t given Bloch angles of the initial pure state.
ReducedDensityMatrix reduced_density(const DressedFrame& frame, const QubitInitialState& init,
                                     double t);

struct AmplitudeTrajectory {
    std::vector<double> times;
    std::vector<cplx> values;
};

// Closed-form amplitude sampled on an arbitrary ascending time grid.
AmplitudeTrajectory sample_amplitude(const DressedFrame& frame, const std::vector<double>& times);

} // namespace dqsim
