#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "honeyeco/decoy.hpp"
#include "honeyeco/econ.hpp"
#include "honeyeco/errors.hpp"
#include "honeyeco/report.hpp"
#include "honeyeco/scenario.hpp"
#include "honeyeco/sim.hpp"

namespace honeyeco::cli {

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path.string());
    out << content;
    if (!out) throw io_error("failed writing output file: " + path.string());
}

/// The analytic curve has no probabilistic reading once per-tick maintenance
/// exceeds the attack-likelihood factor; flag it rather than hide it.
inline void warn_if_utility_overdriven(const ScenarioParams& p) {
    if (p.maintenance_per_tick > p.attack_likelihood_factor)
        std::cerr << "warning: maintenance_per_tick > attack_likelihood_factor: "
                     "analytic utility exceeds its probabilistic interpretation\n";
}

inline int cmd_analyze(const std::string& scenario_path, const std::string& out_path) {
    const ScenarioFile file = load_scenario(scenario_path);
    warn_if_utility_overdriven(file.scenario);
    const ScenarioParams& p = file.scenario;
    const double horizon = static_cast<double>(p.horizon_ticks);

    std::cout << "scenario: startup_cost=" << fixed6(p.startup_cost)
              << " maintenance_per_tick=" << fixed6(p.maintenance_per_tick)
              << " info_value_per_tick=" << fixed6(p.info_value_per_tick)
              << " attack_likelihood_factor=" << fixed6(p.attack_likelihood_factor)
              << " horizon_ticks=" << p.horizon_ticks << '\n';
    std::cout << "cost_at_horizon: " << fixed6(cost_at(p, horizon)) << '\n';
    std::cout << "utility_at_horizon: " << fixed6(utility_at(p, horizon)) << '\n';
    std::cout << "profit_at_horizon: " << fixed6(profit_at(p, horizon)) << '\n';
    std::cout << "break_even_tick: " << fixed6(break_even_time(p).break_even_tick) << '\n';
    std::cout << "break_even_tick_bisection: "
              << fixed6(break_even_time_bisection(p).break_even_tick) << '\n';

    std::ostringstream csv;
    emit_curves_csv(p, csv);
    if (out_path.empty()) {
        std::cout << '\n' << csv.str();
    } else {
        write_file(out_path, csv.str());
    }
    return 0;
}

inline int cmd_sweep(const std::string& scenario_path, double from, double to,
                     std::int64_t steps, const std::string& out_path) {
    const ScenarioFile file = load_scenario(scenario_path);
    warn_if_utility_overdriven(file.scenario);
    const auto rows = sweep_maintenance(file.scenario, from, to, steps);

    std::ostringstream csv;
    emit_sweep_csv(rows, csv);
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        write_file(out_path, csv.str());
    }
    return 0;
}

inline int cmd_simulate(const std::string& scenario_path, const std::string& mode,
                        std::uint64_t trials, bool trials_set, std::uint64_t seed, bool seed_set,
                        const std::string& format, unsigned threads) {
    const ScenarioFile file = load_scenario(scenario_path);
    warn_if_utility_overdriven(file.scenario);

    SimConfig config;
    if (file.simulation) {
        config = *file.simulation;
    } else {
        config.scenario = file.scenario;
        config.horizon_ticks = file.scenario.horizon_ticks;
    }
    if (!mode.empty()) config.mode = mode == "faithful" ? SimMode::faithful : SimMode::extended;
    if (trials_set) config.trials = trials;
    if (seed_set) config.seed = seed;

    const McSummary summary = run_monte_carlo(config, threads);
    emit_sim_report(summary, std::cout,
                    format == "json" ? ReportFormat::json : ReportFormat::csv);
    return 0;
}

inline int cmd_decoy(std::int64_t production, std::int64_t honeypots, double sophistication,
                     const std::string& attacker, double honey_attract, double prod_attract) {
    DecoyConfig d;
    d.production_hosts = production;
    d.honeypots = honeypots;
    d.sophistication = sophistication;
    d.honeypot_attractiveness = honey_attract;
    d.production_attractiveness = prod_attract;
    const auto model = attacker == "focused" ? AttackerModel::focused : AttackerModel::random;
    std::cout << fixed6(decoy_hit_probability(d, model)) << '\n';
    return 0;
}

inline int cmd_calibrate(const std::string& observations_path) {
    const auto observations = load_observations(observations_path);
    std::cout << "estimated_attack_likelihood_factor: "
              << fixed6(estimate_attack_likelihood_factor(observations)) << '\n';
    return 0;
}

} // namespace detail

/// Entry point behind the `honeyeco` binary. Exit codes: 0 success,
/// 1 validation or usage error, 2 I/O error. Errors are reported as a single
/// `error: ...` line on the diagnostic stream.
inline int run(int argc, const char* const* argv) {
    CLI::App app{"Honeynet deployment economics: analytic curves, break-even and "
                 "maintenance-sweep analysis, and a seeded attacker simulation"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    auto* analyze = app.add_subcommand(
        "analyze", "Report cost/utility/profit at the horizon and the break-even tick");
    analyze->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    analyze->add_option("--out", out_path, "Write the curve CSV here instead of stdout");

    double sweep_from = 0.0;
    double sweep_to = 0.0;
    std::int64_t sweep_steps = 0;
    auto* sweep = app.add_subcommand(
        "sweep", "Profit and break-even across a maintenance-spend grid");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--from", sweep_from, "Smallest maintenance value (> 0)")->required();
    sweep->add_option("--to", sweep_to, "Largest maintenance value")->required();
    sweep->add_option("--steps", sweep_steps, "Grid size including both endpoints (>= 2)")
        ->required();
    sweep->add_option("--out", out_path, "Write the sweep CSV here instead of stdout");

    std::string sim_mode;
    std::uint64_t sim_trials = 1;
    std::uint64_t sim_seed = 0;
    std::string sim_format = "csv";
    unsigned sim_threads = 1;
    auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo attack simulation");
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--mode", sim_mode, "Override the simulation mode")
        ->check(CLI::IsMember({"faithful", "extended"}));
    auto* trials_opt =
        simulate->add_option("--trials", sim_trials, "Override the Monte Carlo trial count");
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override the master seed");
    simulate->add_option("--format", sim_format, "Report format (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--threads", sim_threads,
                         "Worker threads for trials; any count gives identical results");

    std::int64_t decoy_production = 0;
    std::int64_t decoy_honeypots = 0;
    double decoy_sophistication = 0.0;
    std::string decoy_attacker = "random";
    double decoy_honey_attract = 1.0;
    double decoy_prod_attract = 1.0;
    auto* decoy = app.add_subcommand(
        "decoy", "Probability that an attacker lands on a honeypot");
    decoy->add_option("--prod", decoy_production, "Production host count (>= 1)")->required();
    decoy->add_option("--honey", decoy_honeypots, "Honeypot count (>= 0)")->required();
    decoy->add_option("--sophistication", decoy_sophistication, "Attacker sophistication in [0, 1]")
        ->required();
    decoy->add_option("--attacker", decoy_attacker, "Target-selection model (default random)")
        ->check(CLI::IsMember({"random", "focused"}));
    decoy->add_option("--honey-attract", decoy_honey_attract, "Attractiveness per honeypot");
    decoy->add_option("--prod-attract", decoy_prod_attract, "Attractiveness per production host");

    std::string observations_path;
    auto* calibrate = app.add_subcommand(
        "calibrate", "Fit the attack-likelihood factor from observed qualified-attack rates");
    calibrate
        ->add_option("--observations", observations_path, "CSV file with header M,rate")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cerr << app.help();
        return 1;
    }

    try {
        if (analyze->parsed()) return detail::cmd_analyze(scenario_path, out_path);
        if (sweep->parsed())
            return detail::cmd_sweep(scenario_path, sweep_from, sweep_to, sweep_steps, out_path);
        if (simulate->parsed())
            return detail::cmd_simulate(scenario_path, sim_mode, sim_trials,
                                        trials_opt->count() > 0, sim_seed, seed_opt->count() > 0,
                                        sim_format, sim_threads);
        if (decoy->parsed())
            return detail::cmd_decoy(decoy_production, decoy_honeypots, decoy_sophistication,
                                     decoy_attacker, decoy_honey_attract, decoy_prod_attract);
        if (calibrate->parsed()) return detail::cmd_calibrate(observations_path);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace honeyeco::cli
