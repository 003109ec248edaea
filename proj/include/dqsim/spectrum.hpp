#pragma once

// Stationary spontaneous-emission spectrum and photon-number norm integrals
// over the reservoir continuum.

#include <vector>

#include "dqsim/dynamics.hpp"
#include "dqsim/model.hpp"

namespace dqsim {

struct SpectrumCurve {
    std::vector<double> offsets;     // mode detuning from the qubit
    std::vector<double> intensities; // same length, >= 0
};

// True if both decay branches are strictly damped (with a small safety
// margin), i.e. the t -> infinity limits below exist.
bool decays(const DressedFrame& frame, double margin = 1e-12);

// Long-time emission intensity at mode detuning delta_k:
//   (gamma / 2 pi) * coupling_weight^2 * |mode_integral pair sum at t=inf|^2.
// Throws std::domain_error("stationary residue; t->infinity limit undefined")
// when a branch fails to decay.
double emission_spectrum(const DressedFrame& frame, double delta_k);

// emission_spectrum over an ascending grid of detunings.
SpectrumCurve spectrum_scan(const DressedFrame& frame, const std::vector<double>& offsets);

// Photon-number content of the continuum at time t:
//   coupling_weight^2 * Int J(mode) |mode integral pair sum|^2 dmode,
// which for an initially excited qubit equals 1 - |amplitude|^2.
// Adaptive quadrature over a window wide enough for all spectral features;
// non-convergence raises AccuracyError.
double continuum_norm(const DressedFrame& frame, double t);

// Same integral with the t -> infinity mode amplitudes; equals 1 for an
// initially excited, fully decaying qubit. Requires decays(frame).
double continuum_norm_infinite(const DressedFrame& frame);

} // namespace dqsim
