#include "dqsim/figures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

#include "dqsim/dynamics.hpp"
#include "dqsim/entanglement.hpp"
#include "dqsim/output.hpp"
#include "dqsim/spectrum.hpp"

namespace dqsim {

namespace {

enum class Kind { Spectrum, Entropy, Power };

struct CurveDef {
    double value = 0.0;   // swept parameter in gamma units
    std::string note;     // optional metadata annotation
};

struct PanelDef {
    std::string tag;            // e.g. "2a"
    Kind kind = Kind::Spectrum;
    bool sweep_omega = true;    // false: sweep drive detuning at fixed omega
    double fixed_omega = 0.0;   // used when sweeping the detuning
    std::vector<CurveDef> curves;
    double dk_half_range = 1.5; // spectrum abscissa half-width (gamma units)
    int dk_steps = 2001;
    double t_max = 25.0;        // time-grid span (units 1/gamma)
    int t_steps = 501;
};

std::vector<PanelDef> figure_panels(int id) {
    const std::string dup_note =
        "curve list for this panel repeats delta_drive=0.5; duplicate replaced by "
        "delta_drive=1.5";
    switch (id) {
        case 2:
            return {
                {.tag = "2a", .kind = Kind::Spectrum, .curves = {{0.0, {}}, {0.01, {}}, {0.05, {}}}},
                {.tag = "2b",
                 .kind = Kind::Spectrum,
                 .curves = {{0.1, {}}, {0.5, {}}, {1.0, {}}},
                 .dk_half_range = 3.0,
                 .dk_steps = 12001},
            };
        case 3:
            return {
                {.tag = "3a",
                 .kind = Kind::Spectrum,
                 .sweep_omega = false,
                 .fixed_omega = 0.1,
                 .curves = {{0.0, {}}, {0.01, {}}, {0.1, {}}}},
                {.tag = "3b",
                 .kind = Kind::Spectrum,
                 .sweep_omega = false,
                 .fixed_omega = 0.1,
                 .curves = {{0.5, {}}, {1.0, {}}, {1.5, dup_note}}},
            };
        case 4:
            return {
                {.tag = "4a",
                 .kind = Kind::Entropy,
                 .curves = {{0.0, {}}, {0.01, {}}, {0.05, {}}},
                 .t_max = 50.0,
                 .t_steps = 1001},
                {.tag = "4b",
                 .kind = Kind::Entropy,
                 .curves = {{0.1, {}}, {0.5, {}}, {1.0, {}}},
                 .t_max = 50.0,
                 .t_steps = 1001},
            };
        case 5:
            return {
                {.tag = "5",
                 .kind = Kind::Entropy,
                 .sweep_omega = false,
                 .fixed_omega = 0.2,
                 .curves = {{0.0, {}}, {0.01, {}}, {0.1, {}}, {1.0, {}}},
                 .t_max = 50.0,
                 .t_steps = 1001},
            };
        case 7:
            return {
                {.tag = "7a", .kind = Kind::Power, .curves = {{0.0, {}}, {0.01, {}}, {0.05, {}}}},
                {.tag = "7b", .kind = Kind::Power, .curves = {{0.1, {}}, {0.5, {}}, {1.0, {}}}},
            };
        case 8:
            return {
                {.tag = "8",
                 .kind = Kind::Power,
                 .sweep_omega = false,
                 .fixed_omega = 0.2,
                 .curves = {{0.0, {}}, {0.01, {}}, {0.1, {}}, {1.0, {}}}},
            };
        default:
            throw std::invalid_argument(
                fmt::format("unsupported figure id {} (supported: 2, 3, 4, 5, 7, 8)", id));
    }
}

ScenarioConfig curve_config(const ScenarioConfig& base, const PanelDef& panel,
                            const CurveDef& curve) {
    ScenarioConfig c = base;
    c.lambda = 0.1;
    c.delta_cavity = 0.0;
    c.theta = 0.0;
    c.phi = 0.0;
    c.theta2 = 0.0;
    c.phi2 = 0.0;
    c.power_method = PowerMethod::Quadrature; // deterministic figure output
    if (panel.sweep_omega) {
        c.omega = curve.value;
        c.delta_drive = 0.0;
    } else {
        c.omega = panel.fixed_omega;
        c.delta_drive = curve.value;
    }
    c.t_max = panel.t_max;
    c.t_steps = panel.t_steps;
    c.dk_min = -panel.dk_half_range;
    c.dk_max = panel.dk_half_range;
    c.dk_steps = panel.dk_steps;
    return c;
}

std::string curve_label(const PanelDef& panel, const CurveDef& curve) {
    return panel.sweep_omega ? fmt::format("Ω = {:g}γ", curve.value)
                             : fmt::format("Δ = {:g}γ", curve.value);
}

std::string curve_stem(const ScenarioConfig& base, const PanelDef& panel,
                       const CurveDef& curve) {
    return fmt::format("{}_fig{}_{}{:g}", base.out_prefix, panel.tag,
                       panel.sweep_omega ? "omega" : "delta", curve.value);
}

const char* kind_name(Kind kind) {
    switch (kind) {
        case Kind::Spectrum: return "emission-spectrum";
        case Kind::Entropy: return "qubit-entropy";
        case Kind::Power: return "entangling-power";
    }
    return "?";
}

} // namespace

std::vector<SystemParams> figure_parameter_sets(double gamma) {
    const double pairs[][2] = {
        {0.0, 0.0},  {0.01, 0.0}, {0.05, 0.0}, {0.1, 0.0}, {0.5, 0.0},
        {1.0, 0.0},  {0.1, 0.01}, {0.1, 0.1},  {0.1, 0.5}, {0.1, 1.0},
        {0.2, 0.0},  {0.2, 0.01}, {0.2, 0.1},  {0.2, 1.0},
    };
    std::vector<SystemParams> sets;
    for (const auto& p : pairs) {
        SystemParams s;
        s.gamma = gamma;
        s.lambda_width = 0.1 * gamma;
        s.rabi = p[0] * gamma;
        s.drive_detuning = p[1] * gamma;
        s.cavity_detuning = 0.0;
        sets.push_back(s);
    }
    return sets;
}

std::vector<double> amplitude_zero_times(const DressedFrame& frame, double t_max) {
    std::vector<double> zeros;
    if (!(t_max > 0.0)) return zeros;
    const double scale = std::max({frame.params.gamma, frame.params.lambda_width,
                                   frame.dressed_frequency, std::abs(frame.kernel_rate)});
    // Roots exist only when the amplitude is real (kernel rate real) and
    // oscillatory (branch splitting purely imaginary).
    if (std::abs(frame.kernel_rate.imag()) > 1e-12 * scale) return zeros;
    if (std::abs(frame.branch_splitting.real()) > 1e-12 * scale) return zeros;
    const double m = frame.kernel_rate.real();
    const double fi = frame.branch_splitting.imag();
    if (!(fi > 0.0)) return zeros;
    const double offset = std::atan2(fi, 2.0 * m);
    for (int n = 1;; ++n) {
        const double t = 4.0 * (n * std::numbers::pi - offset) / fi;
        if (t > t_max) break;
        if (t > 0.0) zeros.push_back(t);
    }
    return zeros;
}

std::vector<std::string> run_figure(int id, const ScenarioConfig& base) {
    const auto panels = figure_panels(id);
    std::vector<std::string> written;

    for (const auto& panel : panels) {
        PlotSpec plot;
        plot.title = fmt::format("{} — preset {}",
                                 panel.kind == Kind::Spectrum  ? "Emission spectrum"
                                 : panel.kind == Kind::Entropy ? "Qubit–field entropy"
                                                               : "Entangling power",
                                 panel.tag);
        plot.x_label = panel.kind == Kind::Spectrum ? "δ_k / γ" : "γ t";
        plot.y_label = panel.kind == Kind::Spectrum  ? "S · γ"
                       : panel.kind == Kind::Entropy ? "S"
                                                     : "entangling power";

        for (const auto& curve : panel.curves) {
            const auto config = curve_config(base, panel, curve);
            const auto frame = config.frame();
            const double gamma = config.gamma;

            CsvTable table;
            table.metadata.push_back(fmt::format("generator: dqsim (build {})", build_id()));
            table.metadata.push_back(fmt::format("preset: figure {}", panel.tag));
            table.metadata.push_back(fmt::format("kind: {}", kind_name(panel.kind)));
            if (!curve.note.empty())
                table.metadata.push_back(fmt::format("note: {}", curve.note));
            for (auto& line : echo_lines(config)) table.metadata.push_back(std::move(line));

            PlotCurve pc;
            pc.label = curve_label(panel, curve);

            if (panel.kind == Kind::Spectrum) {
                table.columns = {"delta_k/gamma", "S*gamma"};
                const auto grid = config.detuning_grid();
                const auto scan = spectrum_scan(frame, grid);
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const double x = grid[i] / gamma;
                    const double y = scan.intensities[i] * gamma;
                    table.rows.push_back({x, y});
                    pc.x.push_back(x);
                    pc.y.push_back(y);
                }
            } else if (panel.kind == Kind::Entropy) {
                table.columns = {"gamma*t", "entropy"};
                const auto init = config.first_qubit();
                for (double t : config.time_grid()) {
                    const double x = gamma * t;
                    const double y = qubit_entropy(frame, init, t);
                    table.rows.push_back({x, y});
                    pc.x.push_back(x);
                    pc.y.push_back(y);
                }
            } else {
                table.columns = {"gamma*t", "entangling_power", "error_estimate"};
                auto times = config.time_grid();
                const auto zeros = amplitude_zero_times(frame, times.back());
                times.insert(times.end(), zeros.begin(), zeros.end());
                std::sort(times.begin(), times.end());
                times.erase(std::unique(times.begin(), times.end(),
                                        [](double a, double b) {
                                            return std::abs(a - b) <=
                                                   1e-12 * std::max(1.0, std::abs(a));
                                        }),
                            times.end());
                PowerSettings settings;
                settings.seed = config.seed;
                settings.samples = config.power_samples;
                for (double t : times) {
                    const auto est =
                        entangling_power(frame, t, PowerMethod::Quadrature, settings);
                    table.rows.push_back({gamma * t, est.value, est.error});
                    pc.x.push_back(gamma * t);
                    pc.y.push_back(est.value);
                }
            }

            const auto csv_path = curve_stem(base, panel, curve) + ".csv";
            write_csv(csv_path, table);
            written.push_back(csv_path);
            plot.curves.push_back(std::move(pc));
        }

        const auto svg_path = fmt::format("{}_fig{}.svg", base.out_prefix, panel.tag);
        write_svg_plot(svg_path, plot);
        written.push_back(svg_path);
    }
    return written;
}

} // namespace dqsim
