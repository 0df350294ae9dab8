#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "openslice/commands.hpp"
#include "openslice/config.hpp"
#include "openslice/errors.hpp"
#include "openslice/report.hpp"

namespace {

constexpr int kExitConfirmed = 0;
constexpr int kExitClaimFailed = 1;
constexpr int kExitConfigError = 2;

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

openslice::config::ScenarioConfig load_scenario(const GlobalArgs& args) {
    openslice::config::ScenarioConfig scenario = args.config_path.empty()
                                                     ? openslice::config::default_config()
                                                     : openslice::config::load_file(args.config_path);
    if (args.seed_set) {
        scenario.seed = args.seed;
    }
    if (!args.out_dir.empty()) {
        scenario.output_dir = args.out_dir;
    }
    openslice::config::validate(scenario);
    return scenario;
}

openslice::commands::CommandOptions make_options(const openslice::config::ScenarioConfig& scenario,
                                                 const GlobalArgs& args,
                                                 bool boosted_energies = false) {
    openslice::commands::CommandOptions options;
    options.output_dir = scenario.output_dir;
    options.format = args.format == "csv" ? openslice::commands::OutputFormat::Csv
                                          : openslice::commands::OutputFormat::Json;
    options.boosted_energies = boosted_energies;
    return options;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"openslice: per-observer descriptions of relativistic open systems\n"
                 "on spacelike slices, with transformation-existence checks and a\n"
                 "CHSH classical/quantum contrast"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs args;
    app.add_option("--config", args.config_path,
                   "Scenario file (JSON); omit to use the built-in default scenario");
    auto* seed_opt = app.add_option("--seed", args.seed, "Override the scenario seed");
    app.add_option("--out", args.out_dir, "Override the scenario output directory");
    app.add_option("--format", args.format, "Machine-readable table format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    bool boosted_energies = false;
    CLI::App* figures = app.add_subcommand(
        "figures", "Emit the spacetime diagram and per-slice support dot plots (SVG + JSON)");
    figures->add_flag("--boosted-energies", boosted_energies,
                      "Also emit supports with energies in each slice's own frame");
    CLI::App* check = app.add_subcommand(
        "check", "Verify that no transformation relates the observers' descriptions");
    CLI::App* chsh = app.add_subcommand(
        "chsh", "CHSH correlations: quantum singlet vs. classical isotropic model");
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Sample one stochastic history and log every observer's slice descriptions");

    CLI11_PARSE(app, argc, argv);
    args.seed_set = seed_opt->count() > 0;

    try {
        const openslice::config::ScenarioConfig scenario = load_scenario(args);

        if (figures->parsed()) {
            const auto artifacts = openslice::commands::cmd_figures(
                scenario, make_options(scenario, args, boosted_energies));
            std::cout << "wrote " << artifacts.size() << " artifacts to " << scenario.output_dir
                      << ":\n";
            for (const auto& artifact : artifacts) {
                std::cout << "  [" << artifact.format << "] " << artifact.path << " ("
                          << artifact.kind << ")\n";
            }
            return 0;
        }
        if (check->parsed()) {
            const auto result = openslice::commands::cmd_check(scenario,
                                                               make_options(scenario, args));
            if (result.classical_degenerate) {
                std::cerr << "warning: k = 0 or p = 0 makes the classical scenario degenerate; "
                             "all descriptions coincide\n";
            }
            std::cout << result.summary << "\n"
                      << "  quantum:   function_exists="
                      << (result.quantum.existence.function_exists ? "true" : "false")
                      << " residual=" << openslice::report::format_sig(result.quantum.fit.residual)
                      << "\n"
                      << "  classical: function_exists="
                      << (result.classical.existence.function_exists ? "true" : "false")
                      << " residual="
                      << openslice::report::format_sig(result.classical.fit.residual) << "\n"
                      << "  verdict written to " << scenario.output_dir << "/check.json\n";
            return result.exit_code == 0 ? kExitConfirmed : kExitClaimFailed;
        }
        if (chsh->parsed()) {
            const auto result = openslice::commands::cmd_chsh(scenario,
                                                              make_options(scenario, args));
            std::cout << "CHSH S values (report in " << scenario.output_dir << "/chsh.json):\n"
                      << "  quantum:            "
                      << openslice::report::format_sig(result.quantum_s) << "\n"
                      << "  classical-analytic: "
                      << openslice::report::format_sig(result.classical_analytic_s) << "\n"
                      << "  classical-mc:       "
                      << openslice::report::format_sig(result.classical_mc_s) << "\n"
                      << "  bound scan max |S|: "
                      << openslice::report::format_sig(result.scan_max_abs_s) << "\n";
            return 0;
        }
        if (simulate->parsed()) {
            const auto result = openslice::commands::cmd_simulate(scenario,
                                                                  make_options(scenario, args));
            std::cout << "sampled history (log in " << scenario.output_dir << "/simulate.json):\n"
                      << "  classical signs: s1=" << result.sign_1 << " s2=" << result.sign_2
                      << "\n"
                      << "  sigma_y outcomes: a=" << result.outcome_a << " b=" << result.outcome_b
                      << "\n";
            return 0;
        }
    } catch (const openslice::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const openslice::InvalidScenarioError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const openslice::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return 0;
}
