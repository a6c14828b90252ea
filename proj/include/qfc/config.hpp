#ifndef QFC_CONFIG_HPP
#define QFC_CONFIG_HPP

#include <string>
#include <vector>

#include "qfc/physical_model.hpp"
#include "qfc/propagation.hpp"
#include "qfc/signals.hpp"
#include "qfc/types.hpp"

namespace qfc {

enum class PulseShape { gaussian, file };

struct PulseConfig {
    double width = 0.0;   // s
    double center = 0.0;  // s
    PulseShape shape = PulseShape::gaussian;
    std::string file;     // tabulated envelope (t_s,re,im) when shape = file
};

struct QubitModeConfig {
    bool enabled = false;
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    double tau = 0.0; // s
};

// Explicit grids are taken verbatim; otherwise they are sized from the pulse
// (dt <= width/40, also respecting the coherence step bound) and the medium
// delay, and v_ref defaults to the harmonic mean of the group velocities.
struct GridOptions {
    bool auto_time = true;
    double t_start = 0.0;
    double t_end = 0.0;
    int n_samples = 0;
    bool auto_n_z = true;
    int n_z = 0;
    bool auto_v_ref = true;
    double v_ref = 0.0;
};

struct ScenarioConfig {
    AtomicSystem atoms;
    DriveConfig drive;
    PulseConfig pulse;
    QubitModeConfig qubit;
    GridOptions grid;
    Tier tier = Tier::analytic;
    RegimeThresholds thresholds;
    double convention_prefactor = 1.0;

    bool operator==(const ScenarioConfig&) const;
    void validate() const;
};

// Flat dotted-key = value text; '#' starts a comment. Unknown keys are
// rejected with the key path. Rates take either an SI value (suffix _rads) or
// a multiple of atoms.gamma2 (suffix _in_gamma), never both.
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& config, const std::string& path);

// Numeric dotted-key assignment, used by sweeps.
void set_config_value(ScenarioConfig& config, const std::string& key, double value);
const std::vector<std::string>& sweepable_keys();

struct SweepSpec {
    std::string key;
    std::vector<double> values;

    static std::vector<double> linear_range(double start, double stop, int count);
    static std::vector<double> log_range(double start, double stop, int count);
};

// Realized simulation inputs for one scenario.
struct PreparedScenario {
    DerivedParams params;
    TimeGrid tgrid;
    PropagationGrid zgrid;
    PulseEnvelope input; // carrier-1 input (single pulse or two-bin superposition)
    TimeBinQubit qubit;  // populated when qubit mode is enabled
};

PreparedScenario prepare_scenario(const ScenarioConfig& config);

} // namespace qfc

#endif
