#include "qfc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qfc/constants.hpp"
#include "qfc/csv.hpp"

namespace qfc {

namespace {

struct RawConfig {
    std::map<std::string, std::string> entries;
    std::string path;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    std::string take_string(const std::string& key, const std::string& fallback) {
        auto it = entries.find(key);
        if (it == entries.end()) {
            return fallback;
        }
        std::string v = it->second;
        entries.erase(it);
        return v;
    }

    double parse_double(const std::string& key, const std::string& text) const {
        try {
            size_t pos = 0;
            const double v = std::stod(text, &pos);
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
            if (pos != text.size()) {
                throw std::invalid_argument("trailing characters");
            }
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ": " + key + ": not a number ('" + text + "')");
        }
    }

    double take_double(const std::string& key, double fallback, bool* found = nullptr) {
        auto it = entries.find(key);
        if (it == entries.end()) {
            if (found) *found = false;
            return fallback;
        }
        const double v = parse_double(key, it->second);
        entries.erase(it);
        if (found) *found = true;
        return v;
    }

    double require_double(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end()) {
            throw std::invalid_argument(path + ": missing required key '" + key + "'");
        }
        const double v = parse_double(key, it->second);
        entries.erase(it);
        return v;
    }

    int take_int(const std::string& key, int fallback, bool* found = nullptr) {
        const double v = take_double(key, fallback, found);
        if (v != std::floor(v)) {
            throw std::invalid_argument(path + ": " + key + ": must be an integer");
        }
        return static_cast<int>(v);
    }

    // Rate in rad/s from '<base>_rads' or '<base>_in_gamma' (times gamma2).
    double take_rate(const std::string& base, double gamma2, bool required, double fallback,
                     bool* found = nullptr) {
        const std::string k_rads = base + "_rads";
        const std::string k_gam = base + "_in_gamma";
        const bool has_rads = has(k_rads);
        const bool has_gam = has(k_gam);
        if (has_rads && has_gam) {
            throw std::invalid_argument(path + ": " + base +
                                        ": give exactly one of _rads or _in_gamma");
        }
        if (found) *found = has_rads || has_gam;
        if (has_rads) {
            return require_double(k_rads);
        }
        if (has_gam) {
            return require_double(k_gam) * gamma2;
        }
        if (required) {
            throw std::invalid_argument(path + ": missing required key '" + k_rads + "' (or '" +
                                        k_gam + "')");
        }
        return fallback;
    }
};

RawConfig read_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    RawConfig raw;
    raw.path = path;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return (a == std::string::npos) ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        if (raw.entries.count(key)) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": duplicate key '" +
                                        key + "'");
        }
        raw.entries[key] = value;
    }
    return raw;
}

} // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
    auto atoms_eq = [](const AtomicSystem& a, const AtomicSystem& b) {
        return a.gamma1 == b.gamma1 && a.gamma2 == b.gamma2 && a.gamma3 == b.gamma3 &&
               a.lambda1 == b.lambda1 && a.lambda2 == b.lambda2 &&
               a.coupling_ratio == b.coupling_ratio && a.density == b.density &&
               a.length == b.length;
    };
    return atoms_eq(atoms, o.atoms) && drive.omega_c == o.drive.omega_c &&
           drive.omega_0 == o.drive.omega_0 && drive.delta == o.drive.delta &&
           drive.delta_0 == o.drive.delta_0 && pulse.width == o.pulse.width &&
           pulse.center == o.pulse.center && pulse.shape == o.pulse.shape &&
           pulse.file == o.pulse.file &&
           qubit.enabled == o.qubit.enabled && qubit.a == o.qubit.a && qubit.b == o.qubit.b &&
           qubit.tau == o.qubit.tau && grid.auto_time == o.grid.auto_time &&
           grid.t_start == o.grid.t_start && grid.t_end == o.grid.t_end &&
           grid.n_samples == o.grid.n_samples && grid.auto_n_z == o.grid.auto_n_z &&
           grid.n_z == o.grid.n_z && grid.auto_v_ref == o.grid.auto_v_ref &&
           grid.v_ref == o.grid.v_ref && tier == o.tier &&
           thresholds.absorption_max == o.thresholds.absorption_max &&
           thresholds.eit_min == o.thresholds.eit_min &&
           thresholds.broadening_max == o.thresholds.broadening_max &&
           convention_prefactor == o.convention_prefactor;
}

void ScenarioConfig::validate() const {
    atoms.validate();
    drive.validate();
    if (!(pulse.width > 0.0)) {
        throw std::invalid_argument("pulse.width_s: must be strictly positive");
    }
    if (pulse.shape == PulseShape::file && pulse.file.empty()) {
        throw std::invalid_argument("pulse.file: required when pulse.shape = file");
    }
    if (qubit.enabled) {
        const double norm = std::norm(qubit.a) + std::norm(qubit.b);
        if (std::abs(norm - 1.0) > 1e-9) {
            throw std::invalid_argument("qubit.a/b: |a|^2 + |b|^2 must equal 1 within 1e-9");
        }
        if (qubit.tau < 5.0 * pulse.width) {
            throw std::invalid_argument("qubit.tau_s: bins overlap, require tau >= 5*width");
        }
    }
    if (!grid.auto_time) {
        TimeGrid{grid.t_start, grid.t_end, grid.n_samples}.validate();
    }
    if (!grid.auto_n_z && grid.n_z < 8) {
        throw std::invalid_argument("grid.n_z: must be at least 8");
    }
    if (!grid.auto_v_ref && !(grid.v_ref > 0.0)) {
        throw std::invalid_argument("grid.v_ref_mps: must be strictly positive");
    }
    if (!(convention_prefactor > 0.0)) {
        throw std::invalid_argument("convention_prefactor: must be strictly positive");
    }
    if (!(thresholds.absorption_max > 0.0) || !(thresholds.eit_min > 0.0) ||
        !(thresholds.broadening_max > 0.0)) {
        throw std::invalid_argument("thresholds.*: must be strictly positive");
    }
}

ScenarioConfig load_config(const std::string& path) {
    RawConfig raw = read_raw(path);
    ScenarioConfig c;

    c.atoms.gamma2 = raw.require_double("atoms.gamma2_rads");
    const double g2 = c.atoms.gamma2;
    c.atoms.gamma1 = raw.take_rate("atoms.gamma1", g2, true, 0.0);
    c.atoms.gamma3 = raw.take_rate("atoms.gamma3", g2, true, 0.0);
    c.atoms.lambda1 = raw.require_double("atoms.lambda1_m");
    c.atoms.lambda2 = raw.require_double("atoms.lambda2_m");
    c.atoms.coupling_ratio = raw.require_double("atoms.coupling_ratio");
    c.atoms.density = raw.require_double("atoms.density_m3");
    c.atoms.length = raw.require_double("atoms.length_m");

    c.drive.omega_c = raw.take_rate("drive.omega_c", g2, true, 0.0);
    c.drive.omega_0 = raw.take_rate("drive.omega_0", g2, true, 0.0);
    // Default working point: Delta = Omega_0, Delta_0 = 0.
    c.drive.delta = raw.take_rate("drive.delta", g2, false, c.drive.omega_0);
    c.drive.delta_0 = raw.take_rate("drive.delta_0", g2, false, 0.0);

    c.pulse.width = raw.require_double("pulse.width_s");
    c.pulse.center = raw.take_double("pulse.center_s", 0.0);
    const std::string shape = raw.take_string("pulse.shape", "gaussian");
    if (shape == "gaussian") {
        c.pulse.shape = PulseShape::gaussian;
    } else if (shape == "file") {
        c.pulse.shape = PulseShape::file;
    } else {
        throw std::invalid_argument(path + ": pulse.shape: must be gaussian or file");
    }
    c.pulse.file = raw.take_string("pulse.file", "");

    bool has_a_re = false, has_tau = false;
    const double a_re = raw.take_double("qubit.a_re", 1.0, &has_a_re);
    const double a_im = raw.take_double("qubit.a_im", 0.0);
    const double b_re = raw.take_double("qubit.b_re", 0.0);
    const double b_im = raw.take_double("qubit.b_im", 0.0);
    const double tau = raw.take_double("qubit.tau_s", 0.0, &has_tau);
    if (has_a_re || has_tau) {
        if (!(has_a_re && has_tau)) {
            throw std::invalid_argument(path +
                                        ": qubit mode needs qubit.a_re/a_im/b_re/b_im and "
                                        "qubit.tau_s together");
        }
        c.qubit.enabled = true;
        c.qubit.a = Complex(a_re, a_im);
        c.qubit.b = Complex(b_re, b_im);
        c.qubit.tau = tau;
    }

    bool f1 = false, f2 = false, f3 = false;
    c.grid.t_start = raw.take_double("grid.t_start_s", 0.0, &f1);
    c.grid.t_end = raw.take_double("grid.t_end_s", 0.0, &f2);
    c.grid.n_samples = raw.take_int("grid.n_samples", 0, &f3);
    if (f1 || f2 || f3) {
        if (!(f1 && f2 && f3)) {
            throw std::invalid_argument(
                path + ": give grid.t_start_s, grid.t_end_s and grid.n_samples together");
        }
        c.grid.auto_time = false;
    }
    bool fz = false;
    c.grid.n_z = raw.take_int("grid.n_z", 0, &fz);
    c.grid.auto_n_z = !fz;
    bool fv = false;
    c.grid.v_ref = raw.take_double("grid.v_ref_mps", 0.0, &fv);
    c.grid.auto_v_ref = !fv;

    c.tier = tier_from_name(raw.take_string("tier", "analytic"));
    c.thresholds.absorption_max = raw.take_double("thresholds.absorption_max", 0.1);
    c.thresholds.eit_min = raw.take_double("thresholds.eit_min", 1.0);
    c.thresholds.broadening_max = raw.take_double("thresholds.broadening_max", 1.0);
    c.convention_prefactor = raw.take_double("convention_prefactor", 1.0);

    if (!raw.entries.empty()) {
        std::string keys;
        for (const auto& [k, v] : raw.entries) {
            keys += (keys.empty() ? "" : ", ") + k;
        }
        throw std::invalid_argument(path + ": unknown key(s): " + keys);
    }

    c.validate();
    return c;
}

void save_config(const ScenarioConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    auto put = [&](const std::string& key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    auto putd = [&](const std::string& key, double value) { put(key, format_double(value)); };

    putd("atoms.gamma1_rads", c.atoms.gamma1);
    putd("atoms.gamma2_rads", c.atoms.gamma2);
    putd("atoms.gamma3_rads", c.atoms.gamma3);
    putd("atoms.lambda1_m", c.atoms.lambda1);
    putd("atoms.lambda2_m", c.atoms.lambda2);
    putd("atoms.coupling_ratio", c.atoms.coupling_ratio);
    putd("atoms.density_m3", c.atoms.density);
    putd("atoms.length_m", c.atoms.length);
    putd("drive.omega_c_rads", c.drive.omega_c);
    putd("drive.omega_0_rads", c.drive.omega_0);
    putd("drive.delta_rads", c.drive.delta);
    putd("drive.delta_0_rads", c.drive.delta_0);
    putd("pulse.width_s", c.pulse.width);
    putd("pulse.center_s", c.pulse.center);
    put("pulse.shape", c.pulse.shape == PulseShape::gaussian ? "gaussian" : "file");
    if (!c.pulse.file.empty()) {
        put("pulse.file", c.pulse.file);
    }
    if (c.qubit.enabled) {
        putd("qubit.a_re", c.qubit.a.real());
        putd("qubit.a_im", c.qubit.a.imag());
        putd("qubit.b_re", c.qubit.b.real());
        putd("qubit.b_im", c.qubit.b.imag());
        putd("qubit.tau_s", c.qubit.tau);
    }
    if (!c.grid.auto_time) {
        putd("grid.t_start_s", c.grid.t_start);
        putd("grid.t_end_s", c.grid.t_end);
        put("grid.n_samples", std::to_string(c.grid.n_samples));
    }
    if (!c.grid.auto_n_z) {
        put("grid.n_z", std::to_string(c.grid.n_z));
    }
    if (!c.grid.auto_v_ref) {
        putd("grid.v_ref_mps", c.grid.v_ref);
    }
    put("tier", tier_name(c.tier));
    putd("thresholds.absorption_max", c.thresholds.absorption_max);
    putd("thresholds.eit_min", c.thresholds.eit_min);
    putd("thresholds.broadening_max", c.thresholds.broadening_max);
    putd("convention_prefactor", c.convention_prefactor);
}

const std::vector<std::string>& sweepable_keys() {
    static const std::vector<std::string> keys = {
        "atoms.gamma1_rads",  "atoms.gamma2_rads", "atoms.gamma3_rads",
        "atoms.lambda1_m",    "atoms.lambda2_m",   "atoms.coupling_ratio",
        "atoms.density_m3",   "atoms.length_m",    "drive.omega_c_rads",
        "drive.omega_0_rads", "drive.delta_rads",  "drive.delta_0_rads",
        "pulse.width_s",      "pulse.center_s",    "qubit.tau_s",
        "convention_prefactor"};
    return keys;
}

void set_config_value(ScenarioConfig& c, const std::string& key, double value) {
    if (key == "atoms.gamma1_rads") c.atoms.gamma1 = value;
    else if (key == "atoms.gamma2_rads") c.atoms.gamma2 = value;
    else if (key == "atoms.gamma3_rads") c.atoms.gamma3 = value;
    else if (key == "atoms.lambda1_m") c.atoms.lambda1 = value;
    else if (key == "atoms.lambda2_m") c.atoms.lambda2 = value;
    else if (key == "atoms.coupling_ratio") c.atoms.coupling_ratio = value;
    else if (key == "atoms.density_m3") c.atoms.density = value;
    else if (key == "atoms.length_m") c.atoms.length = value;
    else if (key == "drive.omega_c_rads") c.drive.omega_c = value;
    else if (key == "drive.omega_0_rads") c.drive.omega_0 = value;
    else if (key == "drive.delta_rads") c.drive.delta = value;
    else if (key == "drive.delta_0_rads") c.drive.delta_0 = value;
    else if (key == "pulse.width_s") c.pulse.width = value;
    else if (key == "pulse.center_s") c.pulse.center = value;
    else if (key == "qubit.tau_s") c.qubit.tau = value;
    else if (key == "convention_prefactor") c.convention_prefactor = value;
    else {
        throw std::invalid_argument("sweep key '" + key + "' does not name a numeric config key");
    }
}

std::vector<double> SweepSpec::linear_range(double start, double stop, int count) {
    if (count < 1) {
        throw std::invalid_argument("sweep count: must be >= 1");
    }
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    for (int i = 0; i < count; ++i) {
        v[i] = start + (stop - start) * i / (count - 1);
    }
    return v;
}

std::vector<double> SweepSpec::log_range(double start, double stop, int count) {
    if (!(start > 0.0) || !(stop > 0.0)) {
        throw std::invalid_argument("log sweep: endpoints must be positive");
    }
    std::vector<double> v = linear_range(std::log(start), std::log(stop), count);
    for (auto& x : v) {
        x = std::exp(x);
    }
    return v;
}

PreparedScenario prepare_scenario(const ScenarioConfig& c) {
    c.validate();
    PreparedScenario s;
    s.params = derive_params(c.atoms, c.drive, c.convention_prefactor);

    const double v_ref = c.grid.auto_v_ref ? s.params.v_ref_harmonic() : c.grid.v_ref;

    if (c.grid.auto_time) {
        const CoherenceParams coh = make_coherence_params(c.atoms, c.drive, s.params);
        const double dt = std::min(c.pulse.width / 40.0, 0.095 / coh.max_rate());
        // Residual drift in the co-moving frame plus generous Gaussian padding.
        const double L = c.atoms.length;
        const double drift_early = std::max(
            {0.0, L / v_ref - L / s.params.v1, L / v_ref - L / s.params.v2});
        const double drift_late = std::max(
            {0.0, L / s.params.v1 - L / v_ref, L / s.params.v2 - L / v_ref});
        const double pad = 5.5 * c.pulse.width;
        const double t_start = c.pulse.center - pad - drift_early;
        const double t_end =
            c.pulse.center + (c.qubit.enabled ? c.qubit.tau : 0.0) + pad + drift_late;
        const int n = static_cast<int>(std::ceil((t_end - t_start) / dt)) + 1;
        s.tgrid = TimeGrid{t_start, t_start + (n - 1) * dt, n};
    } else {
        s.tgrid = TimeGrid{c.grid.t_start, c.grid.t_end, c.grid.n_samples};
    }
    s.tgrid.validate();

    int n_z = c.grid.n_z;
    if (c.grid.auto_n_z) {
        const double beta_L = s.params.beta * c.atoms.length;
        const double kappa_L = std::max(s.params.kappa1, s.params.kappa2) * c.atoms.length;
        n_z = std::max({256, static_cast<int>(std::ceil(beta_L / 0.04)),
                        static_cast<int>(std::ceil(kappa_L / 0.04))});
        if (c.tier == Tier::full) {
            // hold the frame-advection CFL number near 0.7
            const double shift =
                std::abs(1.0 / speed_of_light - 1.0 / v_ref) * c.atoms.length / s.tgrid.dt();
            n_z = std::max(n_z, static_cast<int>(std::ceil(shift / 0.7)));
        }
    }
    s.zgrid = PropagationGrid::make(c.atoms.length, n_z, v_ref);

    // The conversion pipelines inject the photon at carrier 1.
    PulseEnvelope bin;
    if (c.pulse.shape == PulseShape::gaussian) {
        bin = gaussian_pulse(c.pulse.center, c.pulse.width, s.tgrid, 1);
    } else {
        bin = read_envelope_csv(c.pulse.file, 1);
        if (!(bin.grid == s.tgrid)) {
            throw std::invalid_argument(
                "pulse.file: tabulated envelope grid must match the configured time grid");
        }
        const double n = photon_number(bin);
        if (std::abs(n - 1.0) > 1e-9) {
            throw std::invalid_argument("pulse.file: envelope photon number is " +
                                        format_double(n) + ", must be 1 within 1e-9");
        }
    }

    if (c.qubit.enabled) {
        s.qubit = TimeBinQubit{c.qubit.a, c.qubit.b, bin, c.pulse.width, c.qubit.tau};
        s.qubit.validate();
        s.input = qubit_envelope(s.qubit);
    } else {
        s.input = bin;
    }
    return s;
}

} // namespace qfc
