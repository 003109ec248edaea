#include "dqsim/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqsim {

void SystemParams::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(lambda_width > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (!(rabi >= 0.0)) throw std::invalid_argument("omega (Rabi amplitude) must be >= 0");
    if (!std::isfinite(drive_detuning) || !std::isfinite(cavity_detuning) ||
        !std::isfinite(gamma) || !std::isfinite(lambda_width) || !std::isfinite(rabi))
        throw std::invalid_argument("system parameters must be finite");
}

void QubitInitialState::validate() const {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::invalid_argument("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw std::invalid_argument("phi must lie in [0, 2*pi)");
}

double DressedFrame::coupling_weight() const noexcept {
    const double c = std::cos(mixing_angle / 2.0);
    return c * c;
}

cplx DressedFrame::branch_exponent(int sign) const {
    if (sign != 1 && sign != -1) throw std::logic_error("branch sign must be +1 or -1");
    return -kernel_rate / 2.0 + static_cast<double>(sign) * branch_splitting / 4.0;
}

void DressedFrame::validate() const {
    params.validate();
    if (!(mixing_angle >= 0.0 && mixing_angle <= std::numbers::pi))
        throw std::logic_error("mixing angle out of range");
    if (!(dressed_frequency >= 0.0)) throw std::logic_error("dressed frequency negative");
    // The two branch exponents are the roots of s^2 + kernel_rate*s + w*g*l/2,
    // so the splitting must close the quadratic identity.
    const double cp = 1.0 + std::cos(mixing_angle);
    const cplx lhs = branch_splitting * branch_splitting;
    const cplx rhs = 4.0 * kernel_rate * kernel_rate -
                     2.0 * params.gamma * params.lambda_width * cp * cp;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (std::abs(lhs - rhs) > 1e-10 * std::max(scale, 1e-300))
        throw std::logic_error("branch splitting inconsistent with rates");
}

DressedFrame dressed_frame(const SystemParams& params) {
    params.validate();
    DressedFrame frame;
    frame.params = params;
    // atan2(0, 0) == 0 on all sane platforms, but the undriven resonant case
    // deserves an explicit answer rather than a platform guarantee.
    frame.mixing_angle = (params.rabi == 0.0 && params.drive_detuning == 0.0)
                             ? 0.0
                             : std::atan2(2.0 * params.rabi, params.drive_detuning);
    frame.dressed_frequency = std::hypot(params.drive_detuning, 2.0 * params.rabi);
    const double beat =
        frame.dressed_frequency + params.cavity_detuning - params.drive_detuning;
    // beat == 0 must give +0 (not -0): a negative-zero imaginary part lands the
    // splitting below on the lower lip of the sqrt branch cut and flips its sign.
    frame.kernel_rate = cplx(params.lambda_width, beat == 0.0 ? 0.0 : -beat);
    const double cp = 1.0 + std::cos(frame.mixing_angle);
    frame.branch_splitting =
        std::sqrt(4.0 * frame.kernel_rate * frame.kernel_rate -
                  cplx(2.0 * params.gamma * params.lambda_width * cp * cp, 0.0));
    // Everything downstream is invariant under flipping the splitting sign;
    // canonicalize to Im >= 0 on the Re == 0 ray so the oscillatory-regime
    // root formulas can rely on it.
    if (frame.branch_splitting.real() == 0.0 && frame.branch_splitting.imag() < 0.0)
        frame.branch_splitting = -frame.branch_splitting;
    return frame;
}

double spectral_density(const SystemParams& params, double omega_offset) {
    params.validate();
    const double l = params.lambda_width;
    const double x = omega_offset - params.cavity_detuning;
    return params.gamma * l * l / (2.0 * std::numbers::pi * (x * x + l * l));
}

} // namespace dqsim
