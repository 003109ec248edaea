#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "dqsim/commands.hpp"
#include "dqsim/config.hpp"
#include "dqsim/errors.hpp"
#include "dqsim/figures.hpp"
#include "dqsim/validate.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_prefix;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "flat key=value config file");
    cmd->add_option("--set", args.overrides, "override one key (key=value); repeatable");
    cmd->add_option("--out", args.out_prefix, "output path prefix");
}

dqsim::ScenarioConfig load_config(const CommonArgs& args) {
    dqsim::ScenarioConfig config;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in)
            throw dqsim::ConfigError(
                fmt::format("cannot read config file '{}'", args.config_path));
        const std::string text((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
        config = dqsim::parse_config(text);
    }
    // Precedence: defaults < config file < DQSIM_SEED < --set < --out.
    dqsim::apply_environment_seed(config);
    for (const auto& assignment : args.overrides) dqsim::apply_override(config, assignment);
    if (!args.out_prefix.empty()) config.out_prefix = args.out_prefix;
    config.validate();
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dqsim: classically driven qubit in a lossy cavity — decay amplitudes, emission "
        "spectra, qubit-field entropy, entanglement swapping and entangling power"};
    app.require_subcommand(1);
    CommonArgs args;

    auto* amplitude = app.add_subcommand("amplitude", "excited-state amplitude E(t)");
    auto* spectrum = app.add_subcommand("spectrum", "spontaneous-emission spectrum S(delta_k)");
    auto* entropy = app.add_subcommand("entropy", "qubit von Neumann entropy S(t)");
    auto* swap = app.add_subcommand("swap", "post-measurement qubit-qubit concurrence");
    auto* power = app.add_subcommand("power", "entangling power of the swapped state");
    auto* validate = app.add_subcommand("validate", "cross-check closed forms against solvers");
    auto* figure = app.add_subcommand("figure", "regenerate a bundled figure preset");
    for (auto* cmd : {amplitude, spectrum, entropy, swap, power, validate, figure})
        add_common(cmd, args);

    bool strict = false;
    validate->add_flag("--strict", strict, "full parameter sweep (slower)");
    int figure_id = 0;
    figure->add_option("id", figure_id, "figure id")
        ->required()
        ->check(CLI::IsMember({2, 3, 4, 5, 7, 8}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit with 2
    }

    try {
        const auto config = load_config(args);
        std::vector<std::string> written;
        if (amplitude->parsed())
            written = dqsim::run_scenario_command(dqsim::Command::Amplitude, config);
        else if (spectrum->parsed())
            written = dqsim::run_scenario_command(dqsim::Command::Spectrum, config);
        else if (entropy->parsed())
            written = dqsim::run_scenario_command(dqsim::Command::Entropy, config);
        else if (swap->parsed())
            written = dqsim::run_scenario_command(dqsim::Command::Swap, config);
        else if (power->parsed())
            written = dqsim::run_scenario_command(dqsim::Command::Power, config);
        else if (figure->parsed())
            written = dqsim::run_figure(figure_id, config);
        else if (validate->parsed())
            return dqsim::run_validate(config, strict, std::cout) == 0 ? 0 : 1;
        for (const auto& path : written) fmt::print("wrote {}\n", path);
        return 0;
    } catch (const dqsim::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
