#include <clocale>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qwalk/commands.hpp"
#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"

namespace {

using qwalk::cli::Config;
using qwalk::cli::GlobalOptions;

struct CliState {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_base;
    std::string format = "both";
    // Raw flag overrides, applied on top of the config file.
    std::string steps;
    std::string trials;
    std::string coin;
    std::string mode;

    GlobalOptions build() const {
        GlobalOptions opts;
        if (!config_path.empty()) {
            opts.config = Config::from_file(config_path);
        }
        if (!steps.empty()) opts.config.set("steps", steps);
        if (!trials.empty()) opts.config.set("trials", trials);
        if (!coin.empty()) opts.config.set("coin", coin);
        if (!mode.empty()) opts.config.set("mode", mode);
        opts.seed = seed;
        opts.out_base = out_base;
        opts.format = qwalk::cli::parse_format(format);
        return opts;
    }
};

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"qwalk: one-dimensional coined quantum walk simulator with a "
                 "physical rf / stimulated-Raman pulse layer"};
    app.require_subcommand(1);
    app.fallthrough(true); // global flags may follow the subcommand

    CliState state;
    app.add_option("--config", state.config_path, "key = value config file");
    app.add_option("--seed", state.seed, "sampling seed (default 0)");
    app.add_option("--out", state.out_base,
                   "output base path (writes <base>.csv / <base>.json); stdout if omitted");
    app.add_option("--format", state.format, "csv, json or both (default both)");

    std::function<int(const GlobalOptions&)> action;

    auto* walk = app.add_subcommand("walk", "exact unitary walk distribution");
    walk->add_option("--steps", state.steps, "number of steps");
    walk->add_option("--coin", state.coin, "hadamard, rf-pi-2, identity or custom");
    walk->callback([&] { action = qwalk::cli::cmd_walk; });

    auto* scan = app.add_subcommand("variance-scan",
                                    "variance growth and fitted exponents");
    scan->add_option("--coin", state.coin, "coin choice");
    scan->callback([&] { action = qwalk::cli::cmd_variance_scan; });

    auto* pulse = app.add_subcommand("pulse", "physical pulse calibration");
    pulse->require_subcommand(1);
    auto* rf = pulse->add_subcommand("rf", "two-level rf Rabi dynamics");
    rf->callback([&] { action = qwalk::cli::cmd_pulse_rf; });
    auto* raman = pulse->add_subcommand("raman", "three-level stimulated Raman kick");
    raman->callback([&] { action = qwalk::cli::cmd_pulse_raman; });

    auto* plan = app.add_subcommand("plan", "geometry and timing feasibility");
    plan->add_option("--steps", state.steps, "number of steps");
    plan->add_option("--mode", state.mode, "per-step-sum or paper-literal");
    plan->callback([&] { action = qwalk::cli::cmd_plan; });

    auto* experiment =
        app.add_subcommand("experiment", "end-to-end virtual experiment");
    experiment->add_option("--steps", state.steps, "number of steps");
    experiment->add_option("--trials", state.trials, "measurement repetitions");
    experiment->add_option("--coin", state.coin, "coin choice");
    experiment->callback([&] { action = qwalk::cli::cmd_experiment; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return action(state.build());
    } catch (const qwalk::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const qwalk::LatticeOverflowError& e) {
        std::cerr << "lattice overflow: " << e.what() << '\n';
        return 3;
    } catch (const qwalk::InvalidArgumentError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const qwalk::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    }
}
