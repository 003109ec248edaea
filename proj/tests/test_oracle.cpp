#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dqsim/dynamics.hpp"
#include "dqsim/entanglement.hpp"
#include "dqsim/errors.hpp"
#include "dqsim/model.hpp"
#include "dqsim/oracle.hpp"
#include "dqsim/spectrum.hpp"

using namespace dqsim;
using std::numbers::pi;

namespace {

SystemParams params(double rabi, double drive, double cavity = 0.0, double lambda = 0.1,
                    double gamma = 1.0) {
    SystemParams p;
    p.gamma = gamma;
    p.lambda_width = lambda;
    p.rabi = rabi;
    p.drive_detuning = drive;
    p.cavity_detuning = cavity;
    return p;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

double max_gap(const DressedFrame& frame, const AmplitudeTrajectory& traj) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        worst = std::max(worst,
                         std::abs(traj.values[i] - excited_amplitude(frame, traj.times[i])));
    return worst;
}

} // namespace

TEST_CASE("volterra integration reproduces the closed amplitude") {
    const auto grid = linspace(0.0, 25.0, 501);
    for (const auto& p : {params(0.0, 0.0), params(0.1, 0.0), params(1.0, 0.0),
                          params(0.1, 0.5), params(0.2, 1.0)}) {
        const auto frame = dressed_frame(p);
        const auto traj = volterra_solve(frame, grid);
        CHECK(traj.values.front() == cplx(1.0, 0.0));
        CHECK(max_gap(frame, traj) < 1e-6);
    }
}

TEST_CASE("the trapezoid-convolution variant independently agrees") {
    const auto grid = linspace(0.0, 10.0, 101);
    SolverSettings settings;
    settings.method = VolterraMethod::TrapezoidConvolution;
    for (const auto& p : {params(0.0, 0.0), params(0.5, 0.0)}) {
        const auto frame = dressed_frame(p);
        CHECK(max_gap(frame, volterra_solve(frame, grid, settings)) < 1e-4);
    }
}

TEST_CASE("vanishing coupling freezes the amplitude") {
    const auto frame = dressed_frame(params(0.0, 0.0, 0.0, 1e-6));
    const auto grid = linspace(0.0, 10.0, 51);
    const auto traj = volterra_solve(frame, grid);
    for (const auto& v : traj.values) CHECK(std::abs(v - 1.0) < 1e-4);
}

TEST_CASE("volterra error drops 16x when the step is halved") {
    const auto frame = dressed_frame(params(0.5, 0.0));
    const auto grid = linspace(0.0, 10.0, 101);
    // steps must divide the output spacing exactly, or the internal snap to a
    // whole substep count would spoil the exact factor of two
    const double dt = grid[1] - grid[0];
    SolverSettings coarse, fine;
    coarse.step = dt / 5.0;
    fine.step = dt / 10.0;
    const double ratio = max_gap(frame, volterra_solve(frame, grid, coarse)) /
                         max_gap(frame, volterra_solve(frame, grid, fine));
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("oversized steps are rejected") {
    const auto frame = dressed_frame(params(1.0, 0.0));
    SolverSettings settings;
    settings.step = 1.0; // step * scale far above 0.05
    CHECK_THROWS_AS(volterra_solve(frame, linspace(0.0, 5.0, 11), settings),
                    std::invalid_argument);
}

TEST_CASE("time grids must be uniform and start at zero") {
    const auto frame = dressed_frame(params(0.1, 0.0));
    CHECK_THROWS_AS(volterra_solve(frame, {0.0, 0.5, 1.6}), std::invalid_argument);
    CHECK_THROWS_AS(volterra_solve(frame, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("reservoir grid carries the full coupling power") {
    const auto frame = dressed_frame(params(0.5, 0.0));
    const auto reservoir = make_reservoir(frame);
    REQUIRE(reservoir.mode_offsets.size() == 4000);
    // band power = integral of the Lorentzian = gamma*lambda/2, minus the
    // ~0.5% tail outside the finite window
    const double band = 0.5 * 1.0 * 0.1;
    CHECK(reservoir.coupling_sum_sq() == doctest::Approx(band).epsilon(2e-2));
    // couplings mirror the spectral density
    const auto& off = reservoir.mode_offsets;
    const double spacing = off[1] - off[0];
    for (std::size_t k = 0; k < off.size(); k += 500) {
        const double expected = spectral_density(frame.params, -off[k]) * spacing;
        CHECK(reservoir.couplings[k] * reservoir.couplings[k] ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("discretized reservoir evolution conserves the excitation norm") {
    const auto frame = dressed_frame(params(0.5, 0.0));
    const auto reservoir = make_reservoir(frame);
    const auto grid = linspace(0.0, 10.0, 101);
    const auto result = discretized_mode_solve(frame, reservoir, grid);
    CHECK(result.max_norm_drift < 1e-8);
    CHECK(max_gap(frame, result.amplitude) < 2e-3);
}

TEST_CASE("mode-resolved amplitudes follow the closed photon amplitude") {
    const auto frame = dressed_frame(params(0.5, 0.3));
    const auto reservoir = make_reservoir(frame, 4000);
    SolverSettings settings;
    // probe three modes: near resonance and off in both wings
    const auto pick = [&](double target) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < reservoir.mode_offsets.size(); ++k)
            if (std::abs(reservoir.mode_offsets[k] - target) <
                std::abs(reservoir.mode_offsets[best] - target))
                best = k;
        return static_cast<int>(best);
    };
    settings.probe_modes = {pick(-0.6), pick(0.05), pick(1.1)};
    const auto grid = linspace(0.0, 8.0, 81);
    const auto result = discretized_mode_solve(frame, reservoir, grid, settings);
    REQUIRE(result.probes.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        const auto k = static_cast<std::size_t>(settings.probe_modes[j]);
        const double g = reservoir.couplings[k];
        const double dk = reservoir.mode_offsets[k];
        for (std::size_t i = 10; i < grid.size(); i += 20) {
            const cplx expected =
                cplx(0.0, -1.0) * g * photon_amplitude_normalized(frame, dk, grid[i]);
            CHECK(std::abs(result.probes[j][i] - expected) < 5e-4 * std::max(g, 1e-6));
        }
    }
    // final mode intensities reproduce the emission spectrum shape
    const double T = grid.back();
    for (std::size_t k = 200; k + 200 < reservoir.mode_offsets.size(); k += 400) {
        const double g = reservoir.couplings[k];
        if (g < 1e-6) continue;
        const double shape = std::norm(result.final_modes[k]) / (g * g);
        const double expected =
            std::norm(photon_amplitude_normalized(frame, reservoir.mode_offsets[k], T));
        CHECK(shape == doctest::Approx(expected).epsilon(5e-2).scale(1e-4));
    }
}

TEST_CASE("the two oracles agree with each other") {
    const auto frame = dressed_frame(params(0.1, 0.5));
    const auto grid = linspace(0.0, 10.0, 101);
    const auto volterra = volterra_solve(frame, grid);
    const auto modes = discretized_mode_solve(frame, make_reservoir(frame), grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(volterra.values[i] - modes.amplitude.values[i]));
    CHECK(worst < 2e-3);
}

TEST_CASE("identical settings give bit-identical trajectories") {
    const auto frame = dressed_frame(params(0.3, 0.1));
    const auto grid = linspace(0.0, 5.0, 51);
    const auto a = volterra_solve(frame, grid);
    const auto b = volterra_solve(frame, grid);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    const auto reservoir = make_reservoir(frame, 500);
    const auto ra = discretized_mode_solve(frame, reservoir, grid);
    const auto rb = discretized_mode_solve(frame, reservoir, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(ra.amplitude.values[i] == rb.amplitude.values[i]);
}

TEST_CASE("field entropy from the Schmidt form matches the qubit entropy") {
    const auto frame = dressed_frame(params(0.1, 0.0));
    const auto reservoir = make_reservoir(frame, 2000);
    const auto grid = linspace(0.0, 5.0, 26);
    const auto result = discretized_mode_solve(frame, reservoir, grid);

    for (const auto& init :
         {QubitInitialState{0.0, 0.0}, QubitInitialState{pi / 2, 0.0}}) {
        const double c = std::cos(init.theta / 2.0);
        const cplx a = c * result.amplitude.values.back();
        const cplx b = std::sin(init.theta / 2.0) * std::exp(cplx(0.0, init.phi));
        std::vector<cplx> modes = result.final_modes;
        for (auto& m : modes) m *= c;
        const double s_field = schmidt_field_entropy(modes, {a, b});

        double photon_norm = 0.0;
        for (const auto& m : modes) photon_norm += std::norm(m);
        ReducedDensityMatrix rho;
        rho.ee = std::norm(a);
        rho.eg = a * std::conj(b);
        rho.ge = std::conj(rho.eg);
        rho.gg = std::norm(b) + photon_norm;
        CHECK(s_field == doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-8).scale(1.0));
    }

    // product state at t = 0
    std::vector<cplx> empty(reservoir.mode_offsets.size(), cplx(0.0, 0.0));
    CHECK(schmidt_field_entropy(empty, {cplx(1.0, 0.0), cplx(0.0, 0.0)}) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // unnormalized joint states are rejected
    CHECK_THROWS_AS(schmidt_field_entropy(empty, {cplx(0.5, 0.0), cplx(0.0, 0.0)}),
                    NormalizationError);
}
