#include "dqsim/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "dqsim/errors.hpp"

namespace dqsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view key, int line, const std::string& what) {
    if (line > 0)
        throw ConfigError(fmt::format("config key '{}' (line {}): {}", key, line, what));
    throw ConfigError(fmt::format("config key '{}': {}", key, what));
}

double parse_real(std::string_view key, std::string_view text, int line) {
    const auto t = trim(text);
    double value = 0.0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (ec != std::errc() || ptr != end)
        fail(key, line, fmt::format("malformed number '{}'", t));
    if (!std::isfinite(value)) fail(key, line, "value must be finite");
    return value;
}

std::int64_t parse_integer(std::string_view key, std::string_view text, int line) {
    const auto t = trim(text);
    std::int64_t value = 0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (ec != std::errc() || ptr != end)
        fail(key, line, fmt::format("malformed integer '{}'", t));
    return value;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text, int line) {
    const auto t = trim(text);
    std::uint64_t value = 0;
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(t.data(), end, value);
    if (ec != std::errc() || ptr != end)
        fail(key, line, fmt::format("malformed unsigned integer '{}'", t));
    return value;
}

// Applies one assignment; `line` is 1-based for file input, 0 for CLI --set.
void assign(ScenarioConfig& c, std::string_view key, std::string_view value, int line) {
    if (key == "gamma") {
        c.gamma = parse_real(key, value, line);
        if (c.gamma <= 0.0) fail(key, line, "range violation: must be > 0");
    } else if (key == "lambda") {
        c.lambda = parse_real(key, value, line);
        if (c.lambda <= 0.0) fail(key, line, "range violation: must be > 0");
    } else if (key == "omega") {
        c.omega = parse_real(key, value, line);
        if (c.omega < 0.0) fail(key, line, "range violation: must be >= 0");
    } else if (key == "delta_drive") {
        c.delta_drive = parse_real(key, value, line);
    } else if (key == "delta_cavity") {
        c.delta_cavity = parse_real(key, value, line);
    } else if (key == "theta") {
        c.theta = parse_real(key, value, line);
        if (c.theta < 0.0 || c.theta > std::numbers::pi)
            fail(key, line, "range violation: must lie in [0, pi]");
    } else if (key == "phi") {
        c.phi = parse_real(key, value, line);
        if (c.phi < 0.0 || c.phi >= 2.0 * std::numbers::pi)
            fail(key, line, "range violation: must lie in [0, 2pi)");
    } else if (key == "theta2") {
        c.theta2 = parse_real(key, value, line);
        if (c.theta2 < 0.0 || c.theta2 > std::numbers::pi)
            fail(key, line, "range violation: must lie in [0, pi]");
    } else if (key == "phi2") {
        c.phi2 = parse_real(key, value, line);
        if (c.phi2 < 0.0 || c.phi2 >= 2.0 * std::numbers::pi)
            fail(key, line, "range violation: must lie in [0, 2pi)");
    } else if (key == "t_max") {
        c.t_max = parse_real(key, value, line);
        if (c.t_max < 0.0) fail(key, line, "range violation: must be >= 0");
    } else if (key == "t_steps") {
        const auto n = parse_integer(key, value, line);
        if (n < 1 || n > 10'000'000) fail(key, line, "range violation: must lie in [1, 1e7]");
        c.t_steps = static_cast<int>(n);
    } else if (key == "dk_min") {
        c.dk_min = parse_real(key, value, line);
    } else if (key == "dk_max") {
        c.dk_max = parse_real(key, value, line);
    } else if (key == "dk_steps") {
        const auto n = parse_integer(key, value, line);
        if (n < 2 || n > 10'000'000) fail(key, line, "range violation: must lie in [2, 1e7]");
        c.dk_steps = static_cast<int>(n);
    } else if (key == "power_method") {
        const auto t = trim(value);
        if (t == "quadrature") c.power_method = PowerMethod::Quadrature;
        else if (t == "montecarlo") c.power_method = PowerMethod::MonteCarlo;
        else fail(key, line, fmt::format("must be 'quadrature' or 'montecarlo', got '{}'", t));
    } else if (key == "power_samples") {
        c.power_samples = parse_unsigned(key, value, line);
        if (c.power_samples == 0) fail(key, line, "range violation: must be >= 1");
    } else if (key == "seed") {
        c.seed = parse_unsigned(key, value, line);
    } else if (key == "out_prefix") {
        const auto t = trim(value);
        if (t.empty()) fail(key, line, "must be non-empty");
        c.out_prefix = std::string(t);
    } else {
        fail(key, line, "unknown key");
    }
}

} // namespace

void ScenarioConfig::validate() const {
    system_params().validate();
    first_qubit().validate();
    second_qubit().validate();
    if (!(t_max >= 0.0) || !std::isfinite(t_max))
        throw ConfigError("config key 't_max': range violation: must be >= 0");
    if (t_steps < 1) throw ConfigError("config key 't_steps': range violation: must be >= 1");
    if (!(dk_min < dk_max))
        throw ConfigError("config key 'dk_min': range violation: dk_min must be < dk_max");
    if (dk_steps < 2) throw ConfigError("config key 'dk_steps': range violation: must be >= 2");
    if (power_samples == 0)
        throw ConfigError("config key 'power_samples': range violation: must be >= 1");
    if (out_prefix.empty()) throw ConfigError("config key 'out_prefix': must be non-empty");
}

SystemParams ScenarioConfig::system_params() const {
    SystemParams p;
    p.gamma = gamma;
    p.lambda_width = lambda * gamma;
    p.rabi = omega * gamma;
    p.drive_detuning = delta_drive * gamma;
    p.cavity_detuning = delta_cavity * gamma;
    return p;
}

DressedFrame ScenarioConfig::frame() const { return dressed_frame(system_params()); }

QubitInitialState ScenarioConfig::first_qubit() const { return QubitInitialState{theta, phi}; }

QubitInitialState ScenarioConfig::second_qubit() const { return QubitInitialState{theta2, phi2}; }

std::vector<double> ScenarioConfig::time_grid() const {
    // t_max = 0 collapses to the single point t = 0 regardless of t_steps.
    if (t_max == 0.0 || t_steps == 1) return {0.0};
    std::vector<double> grid(static_cast<std::size_t>(t_steps));
    const double span = t_max / gamma;
    for (int i = 0; i < t_steps; ++i)
        grid[static_cast<std::size_t>(i)] = span * static_cast<double>(i) / (t_steps - 1);
    return grid;
}

std::vector<double> ScenarioConfig::detuning_grid() const {
    std::vector<double> grid(static_cast<std::size_t>(dk_steps));
    const double lo = dk_min * gamma;
    const double hi = dk_max * gamma;
    for (int i = 0; i < dk_steps; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / (dk_steps - 1);
    return grid;
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig config;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(
                fmt::format("config line {}: expected key=value, got '{}'", line_no, line));
        const auto key = trim(line.substr(0, eq));
        const auto value = line.substr(eq + 1);
        if (key.empty())
            throw ConfigError(fmt::format("config line {}: empty key", line_no));
        assign(config, key, value, line_no);
    }
    config.validate();
    return config;
}

void apply_override(ScenarioConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(
            fmt::format("--set expects key=value, got '{}'", assignment));
    const auto key = trim(assignment.substr(0, eq));
    if (key.empty()) throw ConfigError("--set expects a non-empty key");
    assign(config, key, assignment.substr(eq + 1), 0);
}

void apply_environment_seed(ScenarioConfig& config) {
    if (const char* env = std::getenv("DQSIM_SEED")) {
        config.seed = parse_unsigned("DQSIM_SEED", env, 0);
    }
}

std::vector<std::string> echo_lines(const ScenarioConfig& c) {
    auto real = [](double v) { return fmt::format("{:.12g}", v); };
    return {
        fmt::format("gamma = {}", real(c.gamma)),
        fmt::format("lambda = {}", real(c.lambda)),
        fmt::format("omega = {}", real(c.omega)),
        fmt::format("delta_drive = {}", real(c.delta_drive)),
        fmt::format("delta_cavity = {}", real(c.delta_cavity)),
        fmt::format("theta = {}", real(c.theta)),
        fmt::format("phi = {}", real(c.phi)),
        fmt::format("theta2 = {}", real(c.theta2)),
        fmt::format("phi2 = {}", real(c.phi2)),
        fmt::format("t_max = {}", real(c.t_max)),
        fmt::format("t_steps = {}", c.t_steps),
        fmt::format("dk_min = {}", real(c.dk_min)),
        fmt::format("dk_max = {}", real(c.dk_max)),
        fmt::format("dk_steps = {}", c.dk_steps),
        fmt::format("power_method = {}", c.power_method == PowerMethod::Quadrature
                                             ? "quadrature"
                                             : "montecarlo"),
        fmt::format("power_samples = {}", c.power_samples),
        fmt::format("seed = {}", c.seed),
        fmt::format("out_prefix = {}", c.out_prefix),
    };
}

} // namespace dqsim
