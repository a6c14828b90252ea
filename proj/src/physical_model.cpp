#include "qfc/physical_model.hpp"

#include <cmath>
#include <stdexcept>

#include "qfc/constants.hpp"

namespace qfc {

namespace {

void require(bool ok, const std::string& field, const std::string& constraint) {
    if (!ok) {
        throw std::invalid_argument(field + ": " + constraint);
    }
}

} // namespace

void AtomicSystem::validate() const {
    require(gamma1 > 0.0 && std::isfinite(gamma1), "atoms.gamma1", "must be strictly positive");
    require(gamma2 > 0.0 && std::isfinite(gamma2), "atoms.gamma2", "must be strictly positive");
    require(gamma3 > 0.0 && std::isfinite(gamma3), "atoms.gamma3", "must be strictly positive");
    require(lambda1 > 0.0 && std::isfinite(lambda1), "atoms.lambda1", "must be strictly positive");
    require(lambda2 > 0.0 && std::isfinite(lambda2), "atoms.lambda2", "must be strictly positive");
    require(coupling_ratio > 0.0 && std::isfinite(coupling_ratio), "atoms.coupling_ratio",
            "must be in (0, inf)");
    require(density > 0.0 && std::isfinite(density), "atoms.density", "must be strictly positive");
    require(length > 0.0 && std::isfinite(length), "atoms.length", "must be strictly positive");
}

void DriveConfig::validate() const {
    require(omega_c > 0.0 && std::isfinite(omega_c), "drive.omega_c", "must be strictly positive");
    require(omega_0 >= 0.0 && std::isfinite(omega_0), "drive.omega_0", "must be non-negative");
    require(std::isfinite(delta), "drive.delta", "must be finite");
    require(std::isfinite(delta_0), "drive.delta_0", "must be finite");
}

DerivedParams derive_params(const AtomicSystem& atoms, const DriveConfig& drive,
                            double convention_prefactor) {
    atoms.validate();
    drive.validate();
    require(convention_prefactor > 0.0 && std::isfinite(convention_prefactor),
            "convention_prefactor", "must be strictly positive");
    // kappa, v, beta all divide by Omega; theta needs a nonzero (Omega_0, Delta_0).
    require(drive.omega_c > 0.0, "drive.omega_c", "must be > 0 (kappa, v, beta diverge)");
    require(drive.omega_0 > 0.0 || drive.delta_0 != 0.0, "drive.omega_0",
            "omega_0 = 0 with delta_0 = 0 leaves the dressing angle undefined");

    DerivedParams p;
    p.sigma1 = 3.0 * atoms.lambda1 * atoms.lambda1 / (4.0 * pi);
    p.sigma2 = 3.0 * atoms.lambda2 * atoms.lambda2 / (4.0 * pi);
    p.alpha = atoms.density * p.sigma1 * atoms.length;

    p.gamma1p = atoms.gamma1_plus();
    p.gamma2p = atoms.gamma2_plus();
    p.gamma_bar = std::sqrt(p.gamma1p * p.gamma2p);
    p.omega_c = drive.omega_c;
    p.d_squared = drive.omega_c * drive.omega_c + p.gamma1p * p.gamma2p;

    const double k1sq = convention_prefactor * atoms.big_gamma1() * atoms.density * p.sigma1 / 2.0;
    const double k2sq = atoms.coupling_ratio * atoms.coupling_ratio * k1sq;
    p.g1 = std::sqrt(k1sq);
    p.g2 = std::sqrt(k2sq);

    const double omega_sq = drive.omega_c * drive.omega_c;
    p.kappa1 = k1sq * p.gamma1p / (4.0 * omega_sq);
    p.kappa2 = k2sq * p.gamma2p / (4.0 * omega_sq);
    p.v1 = 4.0 * omega_sq / k1sq;
    p.v2 = 4.0 * omega_sq / k2sq;
    require(p.v1 < speed_of_light, "derived.v1",
            "group velocity >= c; parameters outside the slow-light regime");
    require(p.v2 < speed_of_light, "derived.v2",
            "group velocity >= c; parameters outside the slow-light regime");

    p.beta = std::sqrt(k1sq * k2sq) / (4.0 * drive.omega_c);
    p.eit_window = omega_sq / (p.gamma_bar * std::sqrt(p.alpha));
    p.theta = 0.5 * std::atan2(2.0 * drive.omega_0, drive.delta_0);
    return p;
}

RegimeReport check_regime(const DerivedParams& params, double pulse_width,
                          const AtomicSystem& atoms, const RegimeThresholds& thresholds) {
    if (!(pulse_width > 0.0) || !std::isfinite(pulse_width)) {
        throw std::invalid_argument("pulse_width: must be strictly positive");
    }
    RegimeReport r;
    r.thresholds = thresholds;

    r.kappa1_L = params.kappa1 * atoms.length;
    r.kappa2_L = params.kappa2 * atoms.length;
    r.absorption_ok =
        r.kappa1_L < thresholds.absorption_max && r.kappa2_L < thresholds.absorption_max;

    r.eit_window_T = params.eit_window * pulse_width;
    r.eit_ok = r.eit_window_T >= thresholds.eit_min;

    const double t2o = pulse_width * pulse_width * params.omega_c;
    r.broadening1 = 16.0 * atoms.length / (params.v1 * t2o);
    r.broadening2 = 16.0 * atoms.length / (params.v2 * t2o);
    r.broadening_ok =
        r.broadening1 <= thresholds.broadening_max && r.broadening2 <= thresholds.broadening_max;

    // Doppler broadening is negligible while k*u stays at or below gamma_bar,
    // with u = sqrt(2 kB T / m) the most probable speed of 87Rb.
    const double k = two_pi / atoms.lambda1;
    const double u = params.gamma_bar / k;
    r.doppler_temperature = rb87_mass * u * u / (2.0 * boltzmann);

    r.all_ok = r.absorption_ok && r.eit_ok && r.broadening_ok;
    return r;
}

double dk_mismatch(double k1, double k, double k2, double k0) {
    return k1 + k - k2 - k0;
}

bool phase_matching_ok(double dk, double length, double max_phase) {
    return std::abs(dk * length) <= max_phase;
}

} // namespace qfc
