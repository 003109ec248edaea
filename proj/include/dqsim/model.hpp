#pragma once

// Core model types: system rates, the dressed (laser-rotated) frame, and the
// Lorentzian coupling profile of the leaky cavity.

#include <complex>

namespace dqsim {

using cplx = std::complex<double>;

// All rates carry the same unit (pick anything; the CLI uses multiples of
// gamma). Detunings are signed.
struct SystemParams {
    double gamma = 1.0;           // microscopic qubit-continuum coupling rate
    double lambda_width = 0.1;    // cavity linewidth (memory time ~ 1/lambda)
    double rabi = 0.0;            // classical drive amplitude, >= 0
    double drive_detuning = 0.0;  // qubit minus drive frequency
    double cavity_detuning = 0.0; // qubit minus cavity-peak frequency

    void validate() const; // throws std::invalid_argument

    // lambda > gamma: reservoir correlations decay faster than the qubit
    // (memoryless); lambda < gamma: pronounced memory effects.
    bool weak_coupling() const noexcept { return lambda_width > gamma; }
    bool strong_coupling() const noexcept { return lambda_width < gamma; }
};

// Bloch angles of a single-qubit pure state cos(t/2)|E> + sin(t/2)e^{i p}|G>.
struct QubitInitialState {
    double theta = 0.0; // in [0, pi]
    double phi = 0.0;   // in [0, 2*pi)

    void validate() const; // throws std::invalid_argument
};

// Frozen derived quantities of the drive-dressed two-level system coupled to
// the Lorentzian reservoir. Everything downstream (amplitude, spectra,
// entanglement) is a function of these.
struct DressedFrame {
    SystemParams params;
    double mixing_angle = 0.0;      // in [0, pi]; 0 at zero drive on resonance
    double dressed_frequency = 0.0; // splitting of the dressed doublet, >= 0
    cplx kernel_rate{0.0, 0.0};     // complex decay rate of the memory kernel
    cplx branch_splitting{0.0, 0.0}; // separation of the two decay branches

    // cos^2(mixing_angle / 2): weight of the transition that couples to the
    // reservoir in the dressed basis.
    double coupling_weight() const noexcept;

    // Exponent of decay branch `sign` (+1/-1): -kernel_rate/2 +- splitting/4.
    cplx branch_exponent(int sign) const;

    // Consistency of the stored fields (throws std::logic_error on misuse).
    void validate() const;
};

// Builds the dressed frame; total over valid SystemParams.
DressedFrame dressed_frame(const SystemParams& params);

// Lorentzian coupling density evaluated at a frequency offset measured from
// the qubit (offset = qubit frequency minus mode frequency). Peaks where the
// offset equals the cavity detuning; integrates to gamma/2 over the real
// line.
double spectral_density(const SystemParams& params, double omega_offset);

} // namespace dqsim
