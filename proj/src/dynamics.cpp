#include "dqsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dqsim {

namespace {

// sinh(z)/z, series-guarded near the origin.
cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-8) return 1.0 + z * z / 6.0;
    return std::sinh(z) / z;
}

// (exp(z) - 1)/z. The series branch keeps full relative accuracy where the
// direct difference would cancel.
cplx expm1_over(cplx z) {
    if (std::abs(z) < 1e-4)
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    return (std::exp(z) - 1.0) / z;
}

// d/dz [(exp(z) - 1)/z], used by the confluent-branch limit.
cplx expm1_over_deriv(cplx z) {
    if (std::abs(z) < 1e-4)
        return 0.5 + z * (1.0 / 3.0 + z * (0.125 + z / 30.0));
    const cplx ez = std::exp(z);
    return (ez * (z - 1.0) + 1.0) / (z * z);
}

} // namespace

cplx excited_amplitude(const DressedFrame& frame, double t) {
    if (t < 0.0) throw std::domain_error("amplitude requested at negative time");
    const cplx m = frame.kernel_rate;
    const cplx f = frame.branch_splitting;
    const cplx z = f * t / 4.0;
    if (std::abs(z) < 0.25) {
        // cosh + (m t / 2) * sinh(z)/z stays cancellation-free for small z and
        // covers the confluent limit f -> 0 exactly.
        return std::exp(-m * t / 2.0) * (std::cosh(z) + (m * t / 2.0) * sinhc(z));
    }
    // Two decaying exponentials; never forms the overflowing cosh(z) alone.
    const cplx r = m / f;
    const cplx ep = std::exp((-m / 2.0 + f / 4.0) * t);
    const cplx em = std::exp((-m / 2.0 - f / 4.0) * t);
    return (0.5 + r) * ep + (0.5 - r) * em;
}

cplx branch_coefficient(const DressedFrame& frame, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("branch sign must be +1 or -1");
    const cplx f = frame.branch_splitting;
    if (f == cplx(0.0, 0.0))
        throw std::domain_error("branch coefficient undefined at vanishing splitting");
    return 0.5 + static_cast<double>(sign) * frame.kernel_rate / f;
}

namespace {

// Detuning entering the mode phase: the mode sits delta_k above the qubit,
// and the relevant beat is against the dressed doublet in the drive frame.
inline double phase_detuning(const DressedFrame& frame, double delta_k) {
    return delta_k + frame.params.drive_detuning - frame.dressed_frequency;
}

} // namespace

cplx mode_integral(const DressedFrame& frame, double delta_k, double t, int sign) {
    if (t < 0.0) throw std::domain_error("mode integral requested at negative time");
    const cplx coef = branch_coefficient(frame, sign);
    const cplx d = frame.branch_exponent(sign) + cplx(0.0, phase_detuning(frame, delta_k));
    return coef * t * expm1_over(d * t);
}

cplx mode_integral_infinity(const DressedFrame& frame, double delta_k, int sign) {
    const cplx coef = branch_coefficient(frame, sign);
    const cplx d = frame.branch_exponent(sign) + cplx(0.0, phase_detuning(frame, delta_k));
    return -coef / d;
}

cplx photon_amplitude_normalized(const DressedFrame& frame, double delta_k, double t) {
    if (t < 0.0) throw std::domain_error("photon amplitude requested at negative time");
    const cplx m = frame.kernel_rate;
    const cplx f = frame.branch_splitting;
    const double w = frame.coupling_weight();
    if (std::abs(f) > 1e-8 * std::abs(m)) {
        return w * (mode_integral(frame, delta_k, t, +1) + mode_integral(frame, delta_k, t, -1));
    }
    // Confluent branches: expand the pair sum to first order in the splitting.
    // sum = E(a t) * t + (m/2) * dE/da where E is (exp(x)-1)/x and
    // a = -m/2 + i * phase_detuning.
    const cplx a = -m / 2.0 + cplx(0.0, phase_detuning(frame, delta_k));
    const cplx sum = t * expm1_over(a * t) + (m / 2.0) * t * t * expm1_over_deriv(a * t);
    return w * sum;
}

void ReducedDensityMatrix::eigenvalues(double& lo, double& hi) const {
    const double half_tr = 0.5 * trace_real();
    const double half_gap = 0.5 * (ee.real() - gg.real());
    const double rad = std::sqrt(half_gap * half_gap + std::norm(eg));
    lo = half_tr - rad;
    hi = half_tr + rad;
}

void ReducedDensityMatrix::validate(double tol) const {
    if (std::abs(ee.imag()) > tol || std::abs(gg.imag()) > tol)
        throw std::domain_error("density matrix has non-real diagonal");
    if (std::abs(eg - std::conj(ge)) > tol)
        throw std::domain_error("density matrix is not Hermitian");
    if (std::abs(trace_real() - 1.0) > tol)
        throw std::domain_error("density matrix trace differs from 1");
    double lo = 0.0, hi = 0.0;
    eigenvalues(lo, hi);
    if (lo < -tol || hi > 1.0 + tol)
        throw std::domain_error("density matrix eigenvalues outside [0, 1]");
}

ReducedDensityMatrix reduced_density(const DressedFrame& frame, const QubitInitialState& init,
                                     double t) {
    init.validate();
    const cplx amp = excited_amplitude(frame, t);
    const double c = std::cos(init.theta / 2.0);
    const double pop = c * c * std::norm(amp);
    const double half_sin = 0.5 * std::sin(init.theta);
    const cplx coh = half_sin * std::exp(cplx(0.0, -init.phi)) * amp;
    ReducedDensityMatrix rho;
    rho.ee = pop;
    rho.eg = coh;
    rho.ge = std::conj(coh);
    rho.gg = 1.0 - pop;
    return rho;
}

AmplitudeTrajectory sample_amplitude(const DressedFrame& frame, const std::vector<double>& times) {
    AmplitudeTrajectory traj;
    traj.times = times;
    traj.values.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
        traj.values.push_back(excited_amplitude(frame, times[i]));
    }
    return traj;
}

} // namespace dqsim
