#ifndef QFC_PHYSICAL_MODEL_HPP
#define QFC_PHYSICAL_MODEL_HPP

#include <string>

namespace qfc {

// Four-level medium: quantum field 1 couples 0-1, quantum field 2 couples 3-2,
// classical drives Omega (1-2) and Omega_0 (0-3). All rates are angular (rad/s),
// all lengths SI. Transverse relaxation rates are half the natural decay rates.
struct AtomicSystem {
    double gamma1 = 0.0;         // natural decay rate of |1> (rad/s)
    double gamma2 = 0.0;         // natural decay rate of |2> (rad/s)
    double gamma3 = 0.0;         // decay rate of |3> (rad/s)
    double lambda1 = 0.0;        // carrier wavelength of field 1 (m)
    double lambda2 = 0.0;        // carrier wavelength of field 2 (m)
    double coupling_ratio = 1.0; // g2/g1
    double density = 0.0;        // atomic number density (m^-3)
    double length = 0.0;         // medium length L (m)

    // Transverse rates Gamma_i = gamma_i/2 and the dressed-coherence damping
    // rates Gamma_{i+} = Gamma_i + Gamma_3/2.
    double big_gamma1() const { return 0.5 * gamma1; }
    double big_gamma2() const { return 0.5 * gamma2; }
    double big_gamma3() const { return 0.5 * gamma3; }
    double gamma1_plus() const { return big_gamma1() + 0.5 * big_gamma3(); }
    double gamma2_plus() const { return big_gamma2() + 0.5 * big_gamma3(); }

    void validate() const; // throws std::invalid_argument naming the offending field
};

struct DriveConfig {
    double omega_c = 0.0;  // Rabi frequency Omega of the 1-2 coupling field (rad/s)
    double omega_0 = 0.0;  // Rabi frequency Omega_0 of the 0-3 field (rad/s)
    double delta = 0.0;    // one-photon detuning Delta (rad/s)
    double delta_0 = 0.0;  // detuning of the 0-3 field (rad/s)

    // Conversion working point: Delta = Omega_0, Delta_0 = 0.
    static DriveConfig resonant(double omega_c, double omega_0) {
        return DriveConfig{omega_c, omega_0, omega_0, 0.0};
    }

    void validate() const;
};

// Quantities computed from (AtomicSystem, DriveConfig).
//
// Coupling-constant convention: the dipole matrix elements are not inputs, so
// g1 is anchored by  g1^2 N / c = prefactor * Gamma_1 * density * sigma_1 / 2
// (reproduces the resonant amplitude absorption coefficient density*sigma/2 of
// a two-level atom), and g2 = coupling_ratio * g1. The g1, g2 stored here are
// sqrt(g_i^2 N / c); both the coherence drive terms and the propagation source
// terms use this same value, which leaves every field observable invariant
// under the unobservable quantization-volume split.
//
// Rate conventions: kappa_i uses Gamma_{i+}; wherever a single Gamma appears
// (EIT window, Doppler bound, identities) the geometric mean
// gamma_bar = sqrt(Gamma_{1+} Gamma_{2+}) is used.
struct DerivedParams {
    double sigma1 = 0.0;     // resonant cross-section 3*lambda1^2/(4*pi) (m^2)
    double sigma2 = 0.0;
    double alpha = 0.0;      // optical depth density*sigma1*L
    double kappa1 = 0.0;     // field absorption coefficients (1/m)
    double kappa2 = 0.0;
    double v1 = 0.0;         // group velocities 4*c*Omega^2/(g_i^2 N) (m/s)
    double v2 = 0.0;
    double beta = 0.0;       // parametric coupling g1*g2*N/(4*c*Omega) (rad/m)
    double eit_window = 0.0; // Omega^2/(gamma_bar*sqrt(alpha)) (rad/s)
    double theta = 0.0;      // dressing mixing angle, tan(2*theta) = 2*Omega_0/Delta_0
    double gamma1p = 0.0;    // Gamma_{1+}, Gamma_{2+} (rad/s)
    double gamma2p = 0.0;
    double d_squared = 0.0;  // D^2 = Omega^2 + Gamma_{1+}*Gamma_{2+}
    double gamma_bar = 0.0;  // sqrt(Gamma_{1+}*Gamma_{2+})
    double g1 = 0.0;         // sqrt(g1^2 N / c), simulation normalization
    double g2 = 0.0;
    double omega_c = 0.0;    // copy of the drive Rabi frequency (regime checks)

    double v_ref_harmonic() const { return 2.0 * v1 * v2 / (v1 + v2); }
};

DerivedParams derive_params(const AtomicSystem& atoms, const DriveConfig& drive,
                            double convention_prefactor = 1.0);

struct RegimeThresholds {
    double absorption_max = 0.1; // kappa_i*L < this
    double eit_min = 1.0;        // eit_window*T >= this
    double broadening_max = 1.0; // 16*L/(v_i*T^2*Omega) <= this
};

struct RegimeReport {
    bool absorption_ok = false;
    double kappa1_L = 0.0;
    double kappa2_L = 0.0;
    bool eit_ok = false;
    double eit_window_T = 0.0;
    bool broadening_ok = false;
    double broadening1 = 0.0;
    double broadening2 = 0.0;
    double doppler_temperature = 0.0; // vapor temperature where k*u = gamma_bar (K)
    bool all_ok = false;
    RegimeThresholds thresholds;
};

RegimeReport check_regime(const DerivedParams& params, double pulse_width,
                          const AtomicSystem& atoms,
                          const RegimeThresholds& thresholds = {});

// Wave-vector balance k1 + k - k2 - k0 for the parametric loop.
double dk_mismatch(double k1, double k, double k2, double k0);
bool phase_matching_ok(double dk, double length, double max_phase = 0.1);

} // namespace qfc

#endif
