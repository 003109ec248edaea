#include "dqsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqsim/errors.hpp"
#include "dqsim/quadrature.hpp"

namespace dqsim {

bool decays(const DressedFrame& frame, double margin) {
    return frame.branch_exponent(+1).real() < -margin &&
           frame.branch_exponent(-1).real() < -margin;
}

namespace {

// Pair sum of the t->infinity mode integrals. The rational reduction
//   (m - i q) / (w g l (1+cos eta)^2 / 8 - q^2 - i m q)
// is algebraically identical to -c+/d+ - c-/d- and free of the confluent
// 0/0 at vanishing branch splitting, so it is used when the splitting is
// too small for the direct form.
cplx infinite_pair_sum(const DressedFrame& frame, double delta_k) {
    const cplx m = frame.kernel_rate;
    const cplx f = frame.branch_splitting;
    if (std::abs(f) > 1e-8 * std::abs(m)) {
        return mode_integral_infinity(frame, delta_k, +1) +
               mode_integral_infinity(frame, delta_k, -1);
    }
    const double q = delta_k + frame.params.drive_detuning - frame.dressed_frequency;
    const double cp = 1.0 + std::cos(frame.mixing_angle);
    const double k2 = frame.params.gamma * frame.params.lambda_width * cp * cp / 8.0;
    return (m - cplx(0.0, q)) / (cplx(k2 - q * q, 0.0) - cplx(0.0, 1.0) * m * q);
}

void require_decay(const DressedFrame& frame) {
    if (!decays(frame))
        throw std::domain_error("stationary residue; t->infinity limit undefined");
}

// Window covering the emission resonances and the reservoir peak, padded by
// generous multiples of every linewidth in play.
void integration_window(const DressedFrame& frame, double& lo, double& hi) {
    const double pad =
        std::max({50.0 * frame.params.lambda_width, 20.0 * std::abs(frame.branch_splitting),
                  20.0 * frame.dressed_frequency});
    const double base = frame.dressed_frequency - frame.params.drive_detuning;
    const double res_plus = base - frame.branch_exponent(+1).imag();
    const double res_minus = base - frame.branch_exponent(-1).imag();
    const double reservoir_peak = -frame.params.cavity_detuning;
    lo = std::min({res_plus, res_minus, reservoir_peak}) - pad;
    hi = std::max({res_plus, res_minus, reservoir_peak}) + pad;
}

} // namespace

double emission_spectrum(const DressedFrame& frame, double delta_k) {
    require_decay(frame);
    const double w = frame.coupling_weight();
    const double prefactor = frame.params.gamma / (2.0 * std::numbers::pi) * w * w;
    return prefactor * std::norm(infinite_pair_sum(frame, delta_k));
}

SpectrumCurve spectrum_scan(const DressedFrame& frame, const std::vector<double>& offsets) {
    require_decay(frame);
    SpectrumCurve curve;
    curve.offsets = offsets;
    curve.intensities.reserve(offsets.size());
    const double w = frame.coupling_weight();
    const double prefactor = frame.params.gamma / (2.0 * std::numbers::pi) * w * w;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (i > 0 && !(offsets[i] > offsets[i - 1]))
            throw std::invalid_argument("spectrum grid must be strictly increasing");
        curve.intensities.push_back(prefactor * std::norm(infinite_pair_sum(frame, offsets[i])));
    }
    return curve;
}

double continuum_norm(const DressedFrame& frame, double t) {
    if (t < 0.0) throw std::domain_error("continuum norm requested at negative time");
    if (t == 0.0) return 0.0;
    double lo = 0.0, hi = 0.0;
    integration_window(frame, lo, hi);
    auto integrand = [&](double delta_k) {
        const double j = spectral_density(frame.params, -delta_k);
        return j * std::norm(photon_amplitude_normalized(frame, delta_k, t));
    };
    // photon_amplitude_normalized already carries one factor of the coupling
    // weight; its square accounts for the full weight^2 of the norm.
    const QuadratureResult q = adaptive_integrate(integrand, lo, hi, 1e-8, 1e-7, 20000);
    return q.value;
}

double continuum_norm_infinite(const DressedFrame& frame) {
    require_decay(frame);
    double lo = 0.0, hi = 0.0;
    integration_window(frame, lo, hi);
    const double w = frame.coupling_weight();
    auto integrand = [&](double delta_k) {
        const double j = spectral_density(frame.params, -delta_k);
        return j * w * w * std::norm(infinite_pair_sum(frame, delta_k));
    };
    const QuadratureResult q = adaptive_integrate(integrand, lo, hi, 1e-8, 1e-7, 20000);
    return q.value;
}

} // namespace dqsim
