#ifndef QFC_COHERENCE_HPP
#define QFC_COHERENCE_HPP

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qfc/physical_model.hpp"
#include "qfc/types.hpp"

namespace qfc {

// Everything the dressed-coherence equations of motion need. g1, g2 are in the
// simulation normalization of DerivedParams (sqrt(g_i^2 N / c)); gamma3 is the
// transverse relaxation rate of |3> (half its decay rate).
struct CoherenceParams {
    double delta = 0.0;
    double omega_0 = 0.0;
    double omega_c = 0.0;
    double gamma1p = 0.0;
    double gamma2p = 0.0;
    double gamma3 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;

    double max_rate() const;
};

CoherenceParams make_coherence_params(const AtomicSystem& atoms, const DriveConfig& drive,
                                      const DerivedParams& derived);

// Dressed coherences rho_{-1}, rho_{-2}, rho_{+1}, rho_{+2}. The dressed
// populations stay frozen at sigma_mm = sigma_pp = 1/2 (first order in the
// quantum fields), so they are constants, not state.
struct CoherenceState {
    Complex rho_m1{};
    Complex rho_m2{};
    Complex rho_p1{};
    Complex rho_p2{};

    static constexpr double population = 0.5;

    CoherenceState& operator+=(const CoherenceState& o);
    friend CoherenceState operator+(CoherenceState a, const CoherenceState& b) { return a += b; }
    friend CoherenceState operator*(double s, const CoherenceState& a);
    double max_abs() const;
};

// Time derivative of the dressed coherences for instantaneous field amplitudes
// e1, e2. The rho_- pair is driven by +i g_i e_i sigma_mm / sqrt(2), the rho_+
// pair by -+ i g_i e_i sigma_pp / sqrt(2) (minus on component 1, plus on 2);
// Omega cross-couples each coherence to its partner and Gamma_3/2 couples the
// two dressed branches.
CoherenceState coherence_rhs(const CoherenceState& state, Complex e1, Complex e2,
                             const CoherenceParams& params);

// Exact steady state of the linear coherence system for constant fields
// (4x4 solve; serves as the oracle for the integrator and the adiabatic forms).
CoherenceState steady_state_coherences(Complex e1, Complex e2, const CoherenceParams& params);

// Steady state of the rho_+ pair alone with the rho_- branch truncated.
std::pair<Complex, Complex> steady_state_rho_plus_truncated(Complex e1, Complex e2,
                                                            const CoherenceParams& params);

// Adiabatic closed forms for rho_{+1}, rho_{+2} (valid at Delta = Omega_0):
// static response, self-derivative dispersion term, static cross coupling and,
// when include_derivative_cross_terms is set, the cross-derivative terms that
// the reduced model drops as negligible.
std::pair<Complex, Complex> adiabatic_coherences(Complex e1, Complex e2, Complex de1_dt,
                                                 Complex de2_dt, const CoherenceParams& params,
                                                 bool include_derivative_cross_terms = true);

// Bare-basis coherences driving the field propagation, with the carrier phase
// factors stripped: sigma_01 = (rho_m1 - rho_p1)/sqrt(2),
// sigma_32 = (rho_m2 + rho_p2)/sqrt(2).
std::pair<Complex, Complex> bare_from_dressed(const CoherenceState& state);

// Basis-change matrices between bare {0,1,2,3} and dressed {-,1,2,+} states.
struct DressedTransform {
    double theta = 0.0;

    Eigen::Matrix4cd S() const;
    Eigen::Matrix4cd U(double k0_z) const; // diag(1,1,1,e^{i k0 z})
};

// Classical RK4 over the sample times of the driving fields, starting from
// zero coherences; fields between grid points are interpolated linearly.
// Rejects grids with dt * max(Omega_0, Omega, Gamma_i+) > 0.1.
std::vector<CoherenceState> integrate_coherences(std::span<const Complex> e1,
                                                 std::span<const Complex> e2, double dt,
                                                 const CoherenceParams& params);

} // namespace qfc

#endif
