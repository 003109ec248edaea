#include "dqsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dqsim/errors.hpp"
#include "dqsim/quadrature.hpp"

namespace dqsim {

double DiscretizedReservoir::coupling_sum_sq() const {
    CompensatedSum acc;
    for (double g : couplings) acc.add(g * g);
    return acc.value();
}

DiscretizedReservoir make_reservoir(const DressedFrame& frame, int mode_count, double window) {
    if (mode_count < 2) throw std::invalid_argument("reservoir needs at least 2 modes");
    const SystemParams& p = frame.params;
    if (window <= 0.0)
        window = 40.0 * p.lambda_width +
                 10.0 * (frame.dressed_frequency + std::abs(p.cavity_detuning) +
                         std::abs(p.drive_detuning));
    DiscretizedReservoir res;
    res.window = window;
    const double spacing = 2.0 * window / mode_count;
    res.mode_offsets.reserve(static_cast<std::size_t>(mode_count));
    res.couplings.reserve(static_cast<std::size_t>(mode_count));
    for (int k = 0; k < mode_count; ++k) {
        const double offset = -window + (k + 0.5) * spacing;
        res.mode_offsets.push_back(offset);
        // spectral_density takes qubit-minus-mode frequency.
        res.couplings.push_back(std::sqrt(spectral_density(p, -offset) * spacing));
    }
    return res;
}

namespace {

void check_uniform_grid(const std::vector<double>& t_grid, double& dt) {
    if (t_grid.empty()) throw std::invalid_argument("time grid is empty");
    if (std::abs(t_grid.front()) > 1e-12)
        throw std::invalid_argument("time grid must start at 0");
    dt = t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0;
    if (t_grid.size() > 1 && !(dt > 0.0))
        throw std::invalid_argument("time grid must be strictly increasing");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double step = t_grid[i] - t_grid[i - 1];
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, dt))
            throw std::invalid_argument("time grid must be uniform");
    }
}

double invariant_scale(const DressedFrame& frame) {
    return std::max({frame.params.lambda_width, frame.dressed_frequency,
                     std::abs(frame.branch_splitting), frame.params.gamma});
}

double stiffness_scale(const DressedFrame& frame) {
    return std::max(invariant_scale(frame), std::abs(frame.kernel_rate));
}

void enforce_step_invariant(const DressedFrame& frame, double step) {
    if (step * invariant_scale(frame) > 0.05 + 1e-12)
        throw std::invalid_argument(
            "integrator step too large for the fastest rate (step * scale must be <= 0.05)");
}

AmplitudeTrajectory solve_auxiliary(const DressedFrame& frame, const std::vector<double>& t_grid,
                                    double step) {
    const cplx m = frame.kernel_rate;
    const double w = frame.coupling_weight();
    const double strength = w * w * frame.params.gamma * frame.params.lambda_width / 2.0;
    // State (amplitude, memory integral); the memory integral obeys a local
    // equation because the kernel is a single exponential.
    cplx e(1.0, 0.0), y(0.0, 0.0);
    AmplitudeTrajectory traj;
    traj.times = t_grid;
    traj.values.assign(t_grid.size(), cplx(0.0, 0.0));
    traj.values[0] = e;
    auto de = [&](cplx, cplx yv) { return -strength * yv; };
    auto dy = [&](cplx ev, cplx yv) { return ev - m * yv; };
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double dt = t_grid[i] - t_grid[i - 1];
        const int n_sub = std::max(1, static_cast<int>(std::ceil(dt / step - 1e-12)));
        const double h = dt / n_sub;
        for (int s = 0; s < n_sub; ++s) {
            const cplx k1e = de(e, y), k1y = dy(e, y);
            const cplx k2e = de(e + 0.5 * h * k1e, y + 0.5 * h * k1y);
            const cplx k2y = dy(e + 0.5 * h * k1e, y + 0.5 * h * k1y);
            const cplx k3e = de(e + 0.5 * h * k2e, y + 0.5 * h * k2y);
            const cplx k3y = dy(e + 0.5 * h * k2e, y + 0.5 * h * k2y);
            const cplx k4e = de(e + h * k3e, y + h * k3y);
            const cplx k4y = dy(e + h * k3e, y + h * k3y);
            e += h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
            y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        }
        traj.values[i] = e;
    }
    return traj;
}

AmplitudeTrajectory solve_trapezoid(const DressedFrame& frame, const std::vector<double>& t_grid,
                                    double step) {
    const cplx m = frame.kernel_rate;
    const double w = frame.coupling_weight();
    const double strength = w * w * frame.params.gamma * frame.params.lambda_width / 2.0;
    double dt = 0.0;
    check_uniform_grid(t_grid, dt);
    int n_sub = 1;
    if (t_grid.size() > 1) n_sub = std::max(1, static_cast<int>(std::ceil(dt / step - 1e-12)));
    const double h = t_grid.size() > 1 ? dt / n_sub : 0.0;
    const std::size_t n_total = (t_grid.size() - 1) * static_cast<std::size_t>(n_sub);
    if (n_total > 50000)
        throw std::invalid_argument(
            "trapezoid-convolution history too long (O(n^2) cost); reduce span or raise step");

    std::vector<cplx> kern(n_total + 2);
    for (std::size_t j = 0; j < kern.size(); ++j)
        kern[j] = std::exp(-m * (h * static_cast<double>(j)));
    std::vector<cplx> hist;
    hist.reserve(n_total + 1);
    hist.push_back(cplx(1.0, 0.0));

    // Trapezoid weights over the recorded history; O(n) per step, O(n^2) total.
    auto memory = [&](std::size_t n, cplx tail) {
        if (n == 0) return cplx(0.0, 0.0);
        cplx acc(0.0, 0.0);
        for (std::size_t j = 1; j + 1 <= n; ++j) acc += kern[n - j] * hist[j];
        acc += 0.5 * kern[n] * hist[0];
        acc += 0.5 * tail;
        return h * acc;
    };

    AmplitudeTrajectory traj;
    traj.times = t_grid;
    traj.values.assign(t_grid.size(), cplx(0.0, 0.0));
    traj.values[0] = hist[0];
    std::size_t record = 1;
    for (std::size_t n = 0; n < n_total; ++n) {
        const cplx fn = -strength * memory(n, hist[n]);
        const cplx predictor = hist[n] + h * fn;
        const cplx fp = -strength * memory(n + 1, predictor);
        hist.push_back(hist[n] + 0.5 * h * (fn + fp));
        if ((n + 1) % static_cast<std::size_t>(n_sub) == 0) {
            traj.values[record] = hist.back();
            ++record;
        }
    }
    return traj;
}

} // namespace

AmplitudeTrajectory volterra_solve(const DressedFrame& frame, const std::vector<double>& t_grid,
                                   const SolverSettings& settings) {
    double dt = 0.0;
    check_uniform_grid(t_grid, dt);
    double step = settings.step;
    if (step <= 0.0) {
        const double preset = settings.method == VolterraMethod::AuxiliaryOde ? 0.02 : 0.005;
        step = preset / stiffness_scale(frame);
    }
    enforce_step_invariant(frame, step);
    if (t_grid.size() == 1) {
        AmplitudeTrajectory traj;
        traj.times = t_grid;
        traj.values.assign(1, cplx(1.0, 0.0));
        return traj;
    }
    return settings.method == VolterraMethod::AuxiliaryOde
               ? solve_auxiliary(frame, t_grid, step)
               : solve_trapezoid(frame, t_grid, step);
}

DiscretizedModeResult discretized_mode_solve(const DressedFrame& frame,
                                             const DiscretizedReservoir& reservoir,
                                             const std::vector<double>& t_grid,
                                             const SolverSettings& settings) {
    double dt = 0.0;
    check_uniform_grid(t_grid, dt);
    const std::size_t n_modes = reservoir.mode_offsets.size();
    if (n_modes == 0 || reservoir.couplings.size() != n_modes)
        throw std::invalid_argument("reservoir mode/coupling arrays are inconsistent");
    for (int idx : settings.probe_modes)
        if (idx < 0 || static_cast<std::size_t>(idx) >= n_modes)
            throw std::invalid_argument("probe mode index out of range");

    const double w = frame.coupling_weight();
    const double base = frame.dressed_frequency - frame.params.drive_detuning;
    std::vector<double> nu(n_modes);
    double nu_max = 0.0;
    for (std::size_t k = 0; k < n_modes; ++k) {
        nu[k] = base - reservoir.mode_offsets[k];
        nu_max = std::max(nu_max, std::abs(nu[k]));
    }
    double step = settings.step;
    if (step <= 0.0) step = 0.05 / std::max(stiffness_scale(frame), nu_max);
    enforce_step_invariant(frame, step);

    DiscretizedModeResult result;
    result.amplitude.times = t_grid;
    result.amplitude.values.assign(t_grid.size(), cplx(0.0, 0.0));
    result.norm_error.assign(t_grid.size(), 0.0);
    result.probes.assign(settings.probe_modes.size(), {});
    for (auto& probe : result.probes) probe.reserve(t_grid.size());

    std::vector<cplx> g(n_modes, cplx(0.0, 0.0)); // mode amplitudes
    cplx e(1.0, 0.0);
    std::vector<cplx> phase(n_modes), half(n_modes);
    std::vector<cplx> k1(n_modes), k2(n_modes), k3(n_modes), k4(n_modes), tmp(n_modes);

    auto record = [&](std::size_t slot) {
        result.amplitude.values[slot] = e;
        CompensatedSum norm;
        norm.add(std::norm(e));
        for (std::size_t k = 0; k < n_modes; ++k) norm.add(std::norm(g[k]));
        const double drift = std::abs(norm.value() - 1.0);
        result.norm_error[slot] = drift;
        result.max_norm_drift = std::max(result.max_norm_drift, drift);
        for (std::size_t pi = 0; pi < settings.probe_modes.size(); ++pi)
            result.probes[pi].push_back(g[static_cast<std::size_t>(settings.probe_modes[pi])]);
    };
    record(0);

    // RHS at a stage with mode phases u_k = exp(i nu_k t_stage):
    //   dE = -i w sum g_k G_k u_k,   dG_k = -i w g_k E / u_k.
    const auto& gk = reservoir.couplings;
    auto rhs = [&](const cplx ev, const std::vector<cplx>& gv, const std::vector<cplx>& u,
                   cplx& de_out, std::vector<cplx>& dg_out) {
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < n_modes; ++k) acc += gk[k] * gv[k] * u[k];
        de_out = cplx(0.0, -w) * acc;
        const cplx drive = cplx(0.0, -w) * ev;
        for (std::size_t k = 0; k < n_modes; ++k) dg_out[k] = drive * gk[k] * std::conj(u[k]);
    };

    std::size_t steps_since_refresh = 0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        const int n_sub = std::max(1, static_cast<int>(std::ceil(span / step - 1e-12)));
        const double h = span / n_sub;
        for (std::size_t k = 0; k < n_modes; ++k) {
            phase[k] = std::exp(cplx(0.0, nu[k] * t_grid[i - 1]));
            half[k] = std::exp(cplx(0.0, nu[k] * h / 2.0));
        }
        for (int s = 0; s < n_sub; ++s) {
            cplx de1, de2, de3, de4;
            rhs(e, g, phase, de1, k1);
            for (std::size_t k = 0; k < n_modes; ++k) {
                tmp[k] = g[k] + 0.5 * h * k1[k];
                phase[k] *= half[k];
            }
            rhs(e + 0.5 * h * de1, tmp, phase, de2, k2);
            for (std::size_t k = 0; k < n_modes; ++k) tmp[k] = g[k] + 0.5 * h * k2[k];
            rhs(e + 0.5 * h * de2, tmp, phase, de3, k3);
            for (std::size_t k = 0; k < n_modes; ++k) {
                tmp[k] = g[k] + h * k3[k];
                phase[k] *= half[k];
            }
            rhs(e + h * de3, tmp, phase, de4, k4);
            e += h / 6.0 * (de1 + 2.0 * de2 + 2.0 * de3 + de4);
            for (std::size_t k = 0; k < n_modes; ++k)
                g[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            if (++steps_since_refresh >= 512) {
                // Phases are advanced multiplicatively; refresh against the
                // exact exponential to stop rounding drift from accumulating.
                const double t_now = t_grid[i - 1] + (s + 1) * h;
                for (std::size_t k = 0; k < n_modes; ++k)
                    phase[k] = std::exp(cplx(0.0, nu[k] * t_now));
                steps_since_refresh = 0;
            }
        }
        record(i);
    }
    result.final_modes = std::move(g);
    if (result.max_norm_drift > 1e-3)
        throw ResolutionError("discretized reservoir under-resolved (norm drift beyond 1e-3)",
                              result.max_norm_drift);
    return result;
}

double schmidt_field_entropy(const std::vector<cplx>& mode_amplitudes,
                             const std::array<cplx, 2>& qubit_weights) {
    const cplx a = qubit_weights[0]; // amplitude on |E, vacuum>
    const cplx b = qubit_weights[1]; // amplitude on |G, vacuum>
    CompensatedSum chi2_acc;
    for (const cplx& c : mode_amplitudes) chi2_acc.add(std::norm(c));
    const double chi2 = chi2_acc.value();
    const double norm = std::norm(a) + std::norm(b) + chi2;
    if (std::abs(norm - 1.0) > 1e-6)
        throw NormalizationError("joint state norm deviates from 1", std::abs(norm - 1.0));
    // Field reduction lives in span{ vacuum, normalized one-photon vector }:
    //   [[|a|^2 + |b|^2, b * chi], [conj(b) * chi, chi^2]].
    const double chi = std::sqrt(chi2);
    ReducedDensityMatrix rho;
    rho.ee = std::norm(a) + std::norm(b);
    rho.eg = b * chi;
    rho.ge = std::conj(rho.eg);
    rho.gg = chi2;
    double lo = 0.0, hi = 0.0;
    rho.eigenvalues(lo, hi);
    lo = std::clamp(lo, 0.0, 1.0);
    hi = std::clamp(hi, 0.0, 1.0);
    auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
    return term(lo) + term(hi);
}

} // namespace dqsim
