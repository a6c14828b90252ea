#include "qfc/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace qfc {

namespace {
constexpr Complex I{0.0, 1.0};
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
} // namespace

double CoherenceParams::max_rate() const {
    return std::max({std::abs(omega_0), std::abs(omega_c), gamma1p, gamma2p});
}

CoherenceParams make_coherence_params(const AtomicSystem& atoms, const DriveConfig& drive,
                                      const DerivedParams& derived) {
    CoherenceParams p;
    p.delta = drive.delta;
    p.omega_0 = drive.omega_0;
    p.omega_c = drive.omega_c;
    p.gamma1p = derived.gamma1p;
    p.gamma2p = derived.gamma2p;
    p.gamma3 = atoms.big_gamma3();
    p.g1 = derived.g1;
    p.g2 = derived.g2;
    return p;
}

CoherenceState& CoherenceState::operator+=(const CoherenceState& o) {
    rho_m1 += o.rho_m1;
    rho_m2 += o.rho_m2;
    rho_p1 += o.rho_p1;
    rho_p2 += o.rho_p2;
    return *this;
}

CoherenceState operator*(double s, const CoherenceState& a) {
    return {s * a.rho_m1, s * a.rho_m2, s * a.rho_p1, s * a.rho_p2};
}

double CoherenceState::max_abs() const {
    return std::max({std::abs(rho_m1), std::abs(rho_m2), std::abs(rho_p1), std::abs(rho_p2)});
}

CoherenceState coherence_rhs(const CoherenceState& s, Complex e1, Complex e2,
                             const CoherenceParams& p) {
    const Complex detune_m = -I * Complex(p.delta + p.omega_0, -p.gamma1p);
    const Complex detune_m2 = -I * Complex(p.delta + p.omega_0, -p.gamma2p);
    const Complex detune_p = -I * Complex(p.delta - p.omega_0, -p.gamma1p);
    const Complex detune_p2 = -I * Complex(p.delta - p.omega_0, -p.gamma2p);
    const double cross = 0.5 * p.gamma3;
    const Complex drive1 = I * p.g1 * e1 * (CoherenceState::population * inv_sqrt2);
    const Complex drive2 = I * p.g2 * e2 * (CoherenceState::population * inv_sqrt2);

    CoherenceState d;
    d.rho_m1 = detune_m * s.rho_m1 - cross * s.rho_p1 + drive1 + I * p.omega_c * s.rho_m2;
    d.rho_m2 = detune_m2 * s.rho_m2 - cross * s.rho_p2 + drive2 + I * p.omega_c * s.rho_m1;
    d.rho_p1 = detune_p * s.rho_p1 - cross * s.rho_m1 - drive1 + I * p.omega_c * s.rho_p2;
    d.rho_p2 = detune_p2 * s.rho_p2 - cross * s.rho_m2 + drive2 + I * p.omega_c * s.rho_p1;
    return d;
}

CoherenceState steady_state_coherences(Complex e1, Complex e2, const CoherenceParams& p) {
    if (!(p.gamma1p > 0.0) || !(p.gamma2p > 0.0)) {
        throw std::invalid_argument(
            "steady_state_coherences: zero damping makes the system singular");
    }
    Eigen::Matrix4cd A;
    const Complex detune_m = -I * Complex(p.delta + p.omega_0, -p.gamma1p);
    const Complex detune_m2 = -I * Complex(p.delta + p.omega_0, -p.gamma2p);
    const Complex detune_p = -I * Complex(p.delta - p.omega_0, -p.gamma1p);
    const Complex detune_p2 = -I * Complex(p.delta - p.omega_0, -p.gamma2p);
    const Complex cross = -0.5 * p.gamma3;
    const Complex iom = I * p.omega_c;
    A << detune_m, iom, cross, 0.0,
         iom, detune_m2, 0.0, cross,
         cross, 0.0, detune_p, iom,
         0.0, cross, iom, detune_p2;

    Eigen::Vector4cd b;
    const Complex drive1 = I * p.g1 * e1 * (CoherenceState::population * inv_sqrt2);
    const Complex drive2 = I * p.g2 * e2 * (CoherenceState::population * inv_sqrt2);
    b << drive1, drive2, -drive1, drive2;

    const Eigen::Vector4cd x = A.partialPivLu().solve(-b);
    const double residual = (A * x + b).norm();
    const double scale = std::max(b.norm(), x.norm() * p.max_rate());
    if (scale > 0.0 && residual > 1e-12 * scale) {
        throw numerical_error("steady_state_coherences: solve residual " +
                              std::to_string(residual / scale));
    }
    return {x(0), x(1), x(2), x(3)};
}

std::pair<Complex, Complex> steady_state_rho_plus_truncated(Complex e1, Complex e2,
                                                            const CoherenceParams& p) {
    // 2x2 block of the rho_+ pair with rho_- forced to zero.
    const Complex a11 = -I * Complex(p.delta - p.omega_0, -p.gamma1p);
    const Complex a22 = -I * Complex(p.delta - p.omega_0, -p.gamma2p);
    const Complex a12 = I * p.omega_c;
    const Complex b1 = -I * p.g1 * e1 * (CoherenceState::population * inv_sqrt2);
    const Complex b2 = I * p.g2 * e2 * (CoherenceState::population * inv_sqrt2);
    const Complex det = a11 * a22 - a12 * a12;
    if (std::abs(det) == 0.0) {
        throw std::invalid_argument("steady_state_rho_plus_truncated: singular block");
    }
    return {(a12 * b2 - a22 * b1) / det, (a12 * b1 - a11 * b2) / det};
}

std::pair<Complex, Complex> adiabatic_coherences(Complex e1, Complex e2, Complex de1_dt,
                                                 Complex de2_dt, const CoherenceParams& p,
                                                 bool include_derivative_cross_terms) {
    const double om = p.omega_c;
    const double d2 = om * om + p.gamma1p * p.gamma2p;
    const double d4 = d2 * d2;
    const double pre2 = 1.0 / (2.0 * std::sqrt(2.0) * d2);
    const double pre4 = 1.0 / (2.0 * std::sqrt(2.0) * d4);

    Complex rp1 = -I * p.gamma2p * pre2 * p.g1 * e1
                  - I * (om * om - p.gamma2p * p.gamma2p) * pre4 * p.g1 * de1_dt
                  - om * pre2 * p.g2 * e2;
    Complex rp2 = I * p.gamma1p * pre2 * p.g2 * e2
                  + I * (om * om - p.gamma1p * p.gamma1p) * pre4 * p.g2 * de2_dt
                  + om * pre2 * p.g1 * e1;
    if (include_derivative_cross_terms) {
        const double gsum = p.gamma1p + p.gamma2p;
        rp1 += gsum * om * pre4 * p.g2 * de2_dt;
        rp2 -= gsum * om * pre4 * p.g1 * de1_dt;
    }
    return {rp1, rp2};
}

std::pair<Complex, Complex> bare_from_dressed(const CoherenceState& s) {
    return {(s.rho_m1 - s.rho_p1) * inv_sqrt2, (s.rho_m2 + s.rho_p2) * inv_sqrt2};
}

Eigen::Matrix4cd DressedTransform::S() const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(0, 0) = c;
    m(0, 3) = -s;
    m(3, 0) = s;
    m(3, 3) = c;
    return m;
}

Eigen::Matrix4cd DressedTransform::U(double k0_z) const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = std::exp(I * k0_z);
    return m;
}

std::vector<CoherenceState> integrate_coherences(std::span<const Complex> e1,
                                                 std::span<const Complex> e2, double dt,
                                                 const CoherenceParams& params) {
    if (e1.size() != e2.size() || e1.size() < 2) {
        throw std::invalid_argument("integrate_coherences: field arrays must match, size >= 2");
    }
    if (dt * params.max_rate() > 0.1) {
        throw std::invalid_argument(
            "integrate_coherences: dt * max(Omega_0, Omega, Gamma_i+) exceeds 0.1; refine the "
            "time grid");
    }
    const size_t n = e1.size();
    std::vector<CoherenceState> out(n);
    CoherenceState s{};
    out[0] = s;
    for (size_t k = 0; k + 1 < n; ++k) {
        const Complex e1a = e1[k], e1b = e1[k + 1], e1m = 0.5 * (e1a + e1b);
        const Complex e2a = e2[k], e2b = e2[k + 1], e2m = 0.5 * (e2a + e2b);
        const CoherenceState k1 = coherence_rhs(s, e1a, e2a, params);
        const CoherenceState k2 = coherence_rhs(s + (0.5 * dt) * k1, e1m, e2m, params);
        const CoherenceState k3 = coherence_rhs(s + (0.5 * dt) * k2, e1m, e2m, params);
        const CoherenceState k4 = coherence_rhs(s + dt * k3, e1b, e2b, params);
        s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out[k + 1] = s;
    }
    return out;
}

} // namespace qfc
