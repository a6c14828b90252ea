#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfc/commands.hpp"
#include "qfc/config.hpp"

namespace {

qfc::ScenarioConfig load_or_exit(const std::string& path, const std::string& tier_override) {
    qfc::ScenarioConfig config = qfc::load_config(path);
    if (!tier_override.empty()) {
        config.tier = qfc::tier_from_name(tier_override);
    }
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-photon frequency conversion in a slow-light four-level medium"};
    app.require_subcommand(1);

    std::string config_path;
    std::string tier;
    std::string out_dir = "qfc_out";
    std::string out_file;
    int jobs = 1;
    int decimate = 1;
    bool lenient = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Scenario config file")->required();
        cmd->add_option("--tier", tier, "Override tier: analytic | reduced | full");
    };

    CLI::App* validate = app.add_subcommand("validate", "Check the conversion-regime conditions");
    add_common(validate);
    validate->add_flag("--lenient", lenient, "Exit 0 even when a condition fails");

    CLI::App* simulate = app.add_subcommand("simulate", "Run one conversion scenario");
    add_common(simulate);
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--decimate", decimate, "Keep every k-th history sample");

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one config key");
    add_common(sweep);
    std::string sweep_key;
    std::vector<double> sweep_values;
    double sweep_start = 0.0, sweep_stop = 0.0;
    int sweep_count = 0;
    bool sweep_log = false;
    sweep->add_option("--key", sweep_key, "Dotted config key to sweep")->required();
    sweep->add_option("--values", sweep_values, "Explicit list of values")->delimiter(',');
    sweep->add_option("--start", sweep_start, "Range start");
    sweep->add_option("--stop", sweep_stop, "Range stop");
    sweep->add_option("--count", sweep_count, "Range point count");
    sweep->add_flag("--log", sweep_log, "Logarithmic range spacing");
    sweep->add_option("--out", out_file, "Output CSV path (stdout when omitted)");
    sweep->add_option("--jobs", jobs, "Concurrent sweep points");

    CLI::App* qubit = app.add_subcommand("qubit", "Convert a time-bin qubit");
    add_common(qubit);

    CLI::App* compare = app.add_subcommand("compare-tiers", "Run all tiers and compare");
    add_common(compare);

    CLI11_PARSE(app, argc, argv);

    try {
        const qfc::ScenarioConfig config = load_or_exit(config_path, tier);
        if (validate->parsed()) {
            return qfc::cmd_validate(config, lenient, std::cout);
        }
        if (simulate->parsed()) {
            return qfc::cmd_simulate(config, out_dir, decimate, std::cout);
        }
        if (sweep->parsed()) {
            qfc::SweepSpec spec;
            spec.key = sweep_key;
            if (!sweep_values.empty()) {
                spec.values = sweep_values;
            } else if (sweep_count > 0) {
                spec.values = sweep_log
                                  ? qfc::SweepSpec::log_range(sweep_start, sweep_stop, sweep_count)
                                  : qfc::SweepSpec::linear_range(sweep_start, sweep_stop,
                                                                 sweep_count);
            } else {
                std::cerr << "error: sweep needs --values or --start/--stop/--count\n";
                return qfc::exit_config_error;
            }
            return qfc::cmd_sweep(config, spec, jobs, out_file, std::cout);
        }
        if (qubit->parsed()) {
            return qfc::cmd_qubit(config, std::cout);
        }
        if (compare->parsed()) {
            return qfc::cmd_compare_tiers(config, std::cout);
        }
    } catch (const qfc::numerical_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfc::exit_numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfc::exit_config_error;
    }
    return qfc::exit_config_error;
}
