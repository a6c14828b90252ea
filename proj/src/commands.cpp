#include "qfc/commands.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <vector>

#include "qfc/analysis.hpp"
#include "qfc/constants.hpp"
#include "qfc/csv.hpp"

namespace qfc {

namespace {

// Maps exceptions from a command body onto the shared exit codes.
template <typename Fn>
int guarded(std::ostream& out, Fn&& body) {
    try {
        return body();
    } catch (const numerical_error& e) {
        out << "error: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const std::invalid_argument& e) {
        out << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return exit_numerical_failure;
    }
}

void print_condition(std::ostream& out, const char* name, double value, const char* rel,
                     double threshold, bool ok) {
    out << name << " value=" << format_double(value) << " threshold" << rel
        << format_double(threshold) << ' ' << (ok ? "PASS" : "FAIL") << '\n';
}

FieldHistory run_tier(const ScenarioConfig& config, const PreparedScenario& s) {
    PulseEnvelope vac = s.input;
    vac.carrier = 2;
    std::fill(vac.samples.begin(), vac.samples.end(), Complex(0.0));
    switch (config.tier) {
        case Tier::analytic:
            return analytic_history(s.input, vac, s.params.beta, s.zgrid);
        case Tier::reduced:
            return propagate_reduced(s.input, vac, s.params, s.zgrid);
        case Tier::full:
            return propagate_full(s.input, vac, config.atoms, config.drive, s.zgrid,
                                  config.convention_prefactor);
    }
    throw std::invalid_argument("tier: unknown");
}

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    std::string message;
    double eta = 0.0;
    double fidelity = 0.0;
    double conservation = 0.0;
    double kappa1_L = 0.0;
    double kappa2_L = 0.0;
    double eit_window_T = 0.0;
};

SweepRow run_sweep_point(ScenarioConfig config, const std::string& key, double value) {
    SweepRow row;
    row.value = value;
    try {
        set_config_value(config, key, value);
        const PreparedScenario s = prepare_scenario(config);
        const FieldHistory h = run_tier(config, s);
        const ConversionResult c = quantum_efficiency(h);
        const RegimeReport regime =
            check_regime(s.params, config.pulse.width, config.atoms, config.thresholds);
        row.eta = c.eta;
        row.fidelity = c.shape_fidelity;
        row.conservation = c.conservation_residual;
        row.kappa1_L = regime.kappa1_L;
        row.kappa2_L = regime.kappa2_L;
        row.eit_window_T = regime.eit_window_T;
        row.ok = true;
    } catch (const std::exception& e) {
        row.message = e.what();
    }
    return row;
}

} // namespace

int cmd_validate(const ScenarioConfig& config, bool lenient, std::ostream& out) {
    return guarded(out, [&]() {
        const DerivedParams p = derive_params(config.atoms, config.drive,
                                              config.convention_prefactor);
        const RegimeReport r =
            check_regime(p, config.pulse.width, config.atoms, config.thresholds);

        print_condition(out, "absorption_kappa1_L", r.kappa1_L, "<", r.thresholds.absorption_max,
                        r.kappa1_L < r.thresholds.absorption_max);
        print_condition(out, "absorption_kappa2_L", r.kappa2_L, "<", r.thresholds.absorption_max,
                        r.kappa2_L < r.thresholds.absorption_max);
        print_condition(out, "eit_window_T", r.eit_window_T, ">=", r.thresholds.eit_min,
                        r.eit_ok);
        print_condition(out, "broadening_1", r.broadening1, "<=", r.thresholds.broadening_max,
                        r.broadening1 <= r.thresholds.broadening_max);
        print_condition(out, "broadening_2", r.broadening2, "<=", r.thresholds.broadening_max,
                        r.broadening2 <= r.thresholds.broadening_max);
        out << "doppler_temperature_K value=" << format_double(r.doppler_temperature) << '\n';

        // Collinear co-propagating drives with the frequency loop closed
        // (k - k0 = k1 - k2) give dk = 2(k1 - k2). Informational only.
        const double k1 = two_pi / config.atoms.lambda1;
        const double k2 = two_pi / config.atoms.lambda2;
        const double dk = dk_mismatch(k1, k1 - k2, k2, 0.0);
        out << "collinear_dk_L value=" << format_double(dk * config.atoms.length);
        if (!phase_matching_ok(dk, config.atoms.length)) {
            out << " WARN (|dk*L| > 0.1 rad; phase matching needs non-collinear geometry)";
        }
        out << '\n';

        out << "all_ok " << (r.all_ok ? "PASS" : "FAIL") << '\n';
        if (!r.all_ok && !lenient) {
            return exit_regime_failure;
        }
        return exit_ok;
    });
}

int cmd_simulate(const ScenarioConfig& config, const std::string& out_dir, int decimate,
                 std::ostream& out) {
    return guarded(out, [&]() {
        const PreparedScenario s = prepare_scenario(config);
        const FieldHistory h = run_tier(config, s);
        const ConversionResult c = quantum_efficiency(h);
        const RegimeReport regime =
            check_regime(s.params, config.pulse.width, config.atoms, config.thresholds);

        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        write_history_csv((dir / "history.csv").string(), h, decimate);
        write_envelope_csv((dir / "envelope_z0_c1.csv").string(), h.slice(1, 0));
        write_envelope_csv((dir / "envelope_z0_c2.csv").string(), h.slice(2, 0));
        write_envelope_csv((dir / "envelope_zL_c1.csv").string(), h.slice(1, h.n_slices() - 1));
        write_envelope_csv((dir / "envelope_zL_c2.csv").string(), h.slice(2, h.n_slices() - 1));

        std::ostringstream summary;
        auto kv = [&](const char* key, double value) {
            summary << key << " = " << format_double(value) << '\n';
        };
        summary << "tier = " << tier_name(config.tier) << '\n';
        kv("eta", c.eta);
        kv("residual_n1", c.residual_n1);
        kv("conservation_residual", c.conservation_residual);
        kv("shape_fidelity", c.shape_fidelity);
        kv("delay_s", c.delay);
        kv("beta_rad_per_m", s.params.beta);
        kv("beta_L_rad", s.params.beta * config.atoms.length);
        kv("kappa1_L", regime.kappa1_L);
        kv("kappa2_L", regime.kappa2_L);
        kv("eit_window_T", regime.eit_window_T);
        kv("broadening_1", regime.broadening1);
        kv("broadening_2", regime.broadening2);
        kv("doppler_temperature_K", regime.doppler_temperature);
        kv("v1_mps", s.params.v1);
        kv("v2_mps", s.params.v2);
        kv("v_ref_mps", s.zgrid.v_ref);
        kv("theta_rad", s.params.theta);
        summary << "regime_all_ok = " << (regime.all_ok ? "true" : "false") << '\n';

        std::ofstream f(dir / "summary.txt");
        if (!f) {
            throw std::runtime_error("cannot open for writing: " + (dir / "summary.txt").string());
        }
        f << summary.str();
        out << summary.str();
        return exit_ok;
    });
}

int cmd_sweep(const ScenarioConfig& config, const SweepSpec& sweep, int jobs,
              const std::string& out_path, std::ostream& out) {
    return guarded(out, [&]() {
        const auto& keys = sweepable_keys();
        if (std::find(keys.begin(), keys.end(), sweep.key) == keys.end()) {
            throw std::invalid_argument("sweep key '" + sweep.key +
                                        "' does not name a numeric config key");
        }
        if (sweep.values.empty()) {
            throw std::invalid_argument("sweep: needs at least one value");
        }
        if (jobs < 1) {
            throw std::invalid_argument("jobs: must be >= 1");
        }

        std::vector<SweepRow> rows(sweep.values.size());
        // Points run concurrently in batches; row order follows the sweep order.
        for (size_t base = 0; base < sweep.values.size(); base += jobs) {
            const size_t end = std::min(base + jobs, sweep.values.size());
            std::vector<std::future<SweepRow>> futures;
            for (size_t i = base; i < end; ++i) {
                futures.push_back(std::async(std::launch::async, run_sweep_point, config,
                                             sweep.key, sweep.values[i]));
            }
            for (size_t i = base; i < end; ++i) {
                rows[i] = futures[i - base].get();
            }
        }

        std::ostringstream csv;
        csv << sweep.key << ",eta,shape_fidelity,conservation_residual,kappa1_L,kappa2_L,"
               "eit_window_T,status\n";
        bool any_failed = false;
        for (const auto& r : rows) {
            csv << format_double(r.value) << ',';
            if (r.ok) {
                csv << format_double(r.eta) << ',' << format_double(r.fidelity) << ','
                    << format_double(r.conservation) << ',' << format_double(r.kappa1_L) << ','
                    << format_double(r.kappa2_L) << ',' << format_double(r.eit_window_T)
                    << ",ok\n";
            } else {
                any_failed = true;
                csv << ",,,,,,failed\n";
                out << "point " << format_double(r.value) << " failed: " << r.message << '\n';
            }
        }
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) {
                throw std::runtime_error("cannot open for writing: " + out_path);
            }
            f << csv.str();
        } else {
            out << csv.str();
        }
        return any_failed ? exit_numerical_failure : exit_ok;
    });
}

int cmd_qubit(const ScenarioConfig& config, std::ostream& out) {
    return guarded(out, [&]() {
        if (!config.qubit.enabled) {
            throw std::invalid_argument("qubit: config has no qubit.a_re/.../qubit.tau_s block");
        }
        const PreparedScenario s = prepare_scenario(config);
        const QubitTransferResult r =
            convert_time_bin_qubit(s.qubit, config.tier, config.atoms, config.drive, s.zgrid,
                                   config.convention_prefactor);
        out << "a_out = " << format_double(r.a_out.real()) << " + "
            << format_double(r.a_out.imag()) << "i\n";
        out << "b_out = " << format_double(r.b_out.real()) << " + "
            << format_double(r.b_out.imag()) << "i\n";
        out << "global_phase_rad = " << format_double(r.global_phase) << '\n';
        out << "fidelity = " << format_double(r.qubit_fidelity) << '\n';
        out << "leakage = " << format_double(r.leakage) << '\n';
        return exit_ok;
    });
}

int cmd_compare_tiers(const ScenarioConfig& config, std::ostream& out) {
    return guarded(out, [&]() {
        const PreparedScenario s = prepare_scenario(config);
        const TierReport r = compare_tiers(s.input, config.atoms, config.drive, s.zgrid,
                                           config.convention_prefactor);
        out << "eta_analytic = " << format_double(r.eta_analytic) << '\n';
        out << "eta_reduced = " << format_double(r.eta_reduced) << '\n';
        out << "eta_full = " << format_double(r.eta_full) << '\n';
        out << "fidelity_analytic = " << format_double(r.fidelity_analytic) << '\n';
        out << "fidelity_reduced = " << format_double(r.fidelity_reduced) << '\n';
        out << "fidelity_full = " << format_double(r.fidelity_full) << '\n';
        out << "max_eta_difference = " << format_double(r.max_eta_difference) << '\n';
        out << "consistent = " << (r.consistent ? "true" : "false") << '\n';
        return exit_ok;
    });
}

} // namespace qfc
