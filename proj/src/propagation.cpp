#include "qfc/propagation.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qfc/analysis.hpp"
#include "qfc/constants.hpp"
#include "qfc/csv.hpp"

namespace qfc {

namespace {
constexpr Complex I{0.0, 1.0};

using Field = std::vector<Complex>;

// Advection derivative, third-order upwind-biased. The upwind bias puts a
// k^4 dissipation on the unresolved modes, which keeps the explicit midpoint
// z-march stable (plain centered differences amplify Nyquist noise over long
// runs). direction is the sign of the advection velocity d(tau)/dz; the
// stencil falls back to centered/one-sided at the edges.
void d_dtau(const Field& f, double dt, double direction, Field& out) {
    const size_t n = f.size();
    out.resize(n);
    const double inv6 = 1.0 / (6.0 * dt);
    if (direction > 0.0) {
        for (size_t k = 2; k + 1 < n; ++k) {
            out[k] = (2.0 * f[k + 1] + 3.0 * f[k] - 6.0 * f[k - 1] + f[k - 2]) * inv6;
        }
        out[1] = (f[2] - f[0]) * (0.5 / dt);
    } else {
        for (size_t k = 1; k + 2 < n; ++k) {
            out[k] = (-2.0 * f[k - 1] - 3.0 * f[k] + 6.0 * f[k + 1] - f[k + 2]) * inv6;
        }
        out[n - 2] = (f[n - 1] - f[n - 3]) * (0.5 / dt);
    }
    out[0] = (f[1] - f[0]) / dt;
    out[n - 1] = (f[n - 1] - f[n - 2]) / dt;
}

bool all_finite(const Field& f) {
    for (const auto& v : f) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
        }
    }
    return true;
}

void check_inputs(const PulseEnvelope& in1, const PulseEnvelope& in2,
                  const PropagationGrid& grid) {
    in1.grid.validate();
    if (!(in1.grid == in2.grid)) {
        throw std::invalid_argument("propagate: input envelopes must share one time grid");
    }
    if (grid.n_z < 1 || !(grid.dz > 0.0) || !(grid.v_ref > 0.0)) {
        throw std::invalid_argument("propagation grid: n_z, dz, v_ref must be positive");
    }
}

FieldHistory init_history(const PulseEnvelope& in1, const PulseEnvelope& in2,
                          const PropagationGrid& grid) {
    FieldHistory h;
    h.tgrid = in1.grid;
    h.zgrid = grid;
    h.e1.resize(grid.n_z + 1);
    h.e2.resize(grid.n_z + 1);
    h.e1[0] = in1.samples;
    h.e2[0] = in2.samples;
    return h;
}

// One explicit-midpoint z step of d(e)/dz = F(e); rhs must fill (r1, r2).
template <typename Rhs>
void midpoint_step(Field& e1, Field& e2, double dz, Rhs&& rhs) {
    static thread_local Field r1, r2, h1, h2;
    rhs(e1, e2, r1, r2);
    const size_t n = e1.size();
    h1.resize(n);
    h2.resize(n);
    for (size_t k = 0; k < n; ++k) {
        h1[k] = e1[k] + 0.5 * dz * r1[k];
        h2[k] = e2[k] + 0.5 * dz * r2[k];
    }
    rhs(h1, h2, r1, r2);
    for (size_t k = 0; k < n; ++k) {
        e1[k] += dz * r1[k];
        e2[k] += dz * r2[k];
    }
}

} // namespace

const char* tier_name(Tier tier) {
    switch (tier) {
        case Tier::analytic: return "analytic";
        case Tier::reduced: return "reduced";
        case Tier::full: return "full";
    }
    return "?";
}

Tier tier_from_name(const std::string& name) {
    if (name == "analytic") return Tier::analytic;
    if (name == "reduced") return Tier::reduced;
    if (name == "full") return Tier::full;
    throw std::invalid_argument("tier: must be analytic, reduced or full (got '" + name + "')");
}

PropagationGrid PropagationGrid::make(double length, int n_z, double v_ref) {
    if (!(length > 0.0) || n_z < 1) {
        throw std::invalid_argument("propagation grid: length and n_z must be positive");
    }
    if (!(v_ref > 0.0)) {
        throw std::invalid_argument("propagation grid: v_ref must be positive");
    }
    return PropagationGrid{n_z, length / n_z, v_ref};
}

void validate_propagation_grid(const PropagationGrid& grid, const DerivedParams& params) {
    if (grid.n_z < 8) {
        throw std::invalid_argument("grid.n_z: must be at least 8");
    }
    if (grid.dz * params.beta > 0.05) {
        throw std::invalid_argument("grid.n_z: dz*beta exceeds 0.05, conversion under-resolved");
    }
    if (grid.dz * std::max(params.kappa1, params.kappa2) > 0.05) {
        throw std::invalid_argument("grid.n_z: dz*kappa exceeds 0.05, absorption under-resolved");
    }
}

PulseEnvelope FieldHistory::slice(int carrier, int iz) const {
    if (iz < 0 || iz >= n_slices() || (carrier != 1 && carrier != 2)) {
        throw std::invalid_argument("FieldHistory::slice: index off grid");
    }
    PulseEnvelope p;
    p.grid = tgrid;
    p.carrier = carrier;
    p.samples = (carrier == 1) ? e1[iz] : e2[iz];
    return p;
}

double FieldHistory::photon_number_at(int carrier, int iz) const {
    const auto& f = (carrier == 1) ? e1.at(iz) : e2.at(iz);
    double sum = 0.0;
    for (const auto& v : f) {
        sum += std::norm(v);
    }
    return sum * tgrid.dt();
}

std::pair<PulseEnvelope, PulseEnvelope> analytic_solution(const PulseEnvelope& in1,
                                                          const PulseEnvelope& in2, double beta,
                                                          double z) {
    if (!(in1.grid == in2.grid)) {
        throw std::invalid_argument("analytic_solution: input envelopes must share one grid");
    }
    const double c = std::cos(beta * z);
    const Complex is = I * std::sin(beta * z);
    PulseEnvelope out1 = in1;
    PulseEnvelope out2 = in2;
    for (int k = 0; k < in1.grid.n_samples; ++k) {
        out1.samples[k] = c * in1.samples[k] + is * in2.samples[k];
        out2.samples[k] = c * in2.samples[k] + is * in1.samples[k];
    }
    return {out1, out2};
}

FieldHistory analytic_history(const PulseEnvelope& in1, const PulseEnvelope& in2, double beta,
                              const PropagationGrid& grid) {
    check_inputs(in1, in2, grid);
    FieldHistory h = init_history(in1, in2, grid);
    for (int m = 1; m <= grid.n_z; ++m) {
        auto [o1, o2] = analytic_solution(in1, in2, beta, h.z(m));
        h.e1[m] = std::move(o1.samples);
        h.e2[m] = std::move(o2.samples);
    }
    return h;
}

FieldHistory propagate_reduced(const PulseEnvelope& in1, const PulseEnvelope& in2,
                               const DerivedParams& params, const PropagationGrid& grid) {
    check_inputs(in1, in2, grid);
    validate_propagation_grid(grid, params);
    if (!std::isfinite(params.beta) || !std::isfinite(params.v1) || !std::isfinite(params.v2)) {
        throw std::invalid_argument("propagate_reduced: non-finite derived parameters");
    }
    const double dt = in1.grid.dt();
    const double a1 = 1.0 / params.v1 - 1.0 / grid.v_ref;
    const double a2 = 1.0 / params.v2 - 1.0 / grid.v_ref;
    const double cfl = std::max(std::abs(a1), std::abs(a2)) * grid.dz / dt;
    if (cfl > 0.85) {
        throw std::invalid_argument("propagate_reduced: walk-off CFL number " +
                                    format_double(cfl) +
                                    " exceeds 0.85; refine n_z or the grid");
    }

    FieldHistory h = init_history(in1, in2, grid);
    Field e1 = in1.samples;
    Field e2 = in2.samples;
    Field d1, d2;
    const Complex ib = I * params.beta;
    auto rhs = [&](const Field& f1, const Field& f2, Field& r1, Field& r2) {
        d_dtau(f1, dt, a1, d1);
        d_dtau(f2, dt, a2, d2);
        const size_t n = f1.size();
        r1.resize(n);
        r2.resize(n);
        for (size_t k = 0; k < n; ++k) {
            r1[k] = -a1 * d1[k] + ib * f2[k];
            r2[k] = -a2 * d2[k] + ib * f1[k];
        }
    };
    for (int m = 1; m <= grid.n_z; ++m) {
        midpoint_step(e1, e2, grid.dz, rhs);
        if (!all_finite(e1) || !all_finite(e2)) {
            throw numerical_error("propagate_reduced: non-finite field at slice " +
                                  std::to_string(m));
        }
        h.e1[m] = e1;
        h.e2[m] = e2;
    }
    return h;
}

FieldHistory propagate_full_core(const PulseEnvelope& in1, const PulseEnvelope& in2,
                                 const CoherenceParams& coh, const PropagationGrid& grid) {
    check_inputs(in1, in2, grid);
    const double dt = in1.grid.dt();
    if (dt * coh.max_rate() > 0.1) {
        throw std::invalid_argument(
            "propagate_full: dt * max(Omega_0, Omega, Gamma_i+) exceeds 0.1; refine the time "
            "grid");
    }
    const double a = 1.0 / speed_of_light - 1.0 / grid.v_ref;
    const double cfl = std::abs(a) * grid.dz / dt;
    if (cfl > 0.85) {
        throw std::invalid_argument("propagate_full: advection CFL number " + format_double(cfl) +
                                    " exceeds 0.85; refine n_z or the time grid");
    }

    FieldHistory h = init_history(in1, in2, grid);
    Field e1 = in1.samples;
    Field e2 = in2.samples;
    Field d1, d2;
    auto rhs = [&](const Field& f1, const Field& f2, Field& r1, Field& r2) {
        d_dtau(f1, dt, a, d1);
        d_dtau(f2, dt, a, d2);
        const auto coherences = integrate_coherences(f1, f2, dt, coh);
        const size_t n = f1.size();
        r1.resize(n);
        r2.resize(n);
        for (size_t k = 0; k < n; ++k) {
            const auto [sigma01, sigma32] = bare_from_dressed(coherences[k]);
            r1[k] = -a * d1[k] + I * coh.g1 * sigma01;
            r2[k] = -a * d2[k] + I * coh.g2 * sigma32;
        }
    };
    for (int m = 1; m <= grid.n_z; ++m) {
        midpoint_step(e1, e2, grid.dz, rhs);
        if (!all_finite(e1) || !all_finite(e2)) {
            throw numerical_error("propagate_full: non-finite field at slice " +
                                  std::to_string(m));
        }
        h.e1[m] = e1;
        h.e2[m] = e2;
    }
    return h;
}

FieldHistory propagate_full(const PulseEnvelope& in1, const PulseEnvelope& in2,
                            const AtomicSystem& atoms, const DriveConfig& drive,
                            const PropagationGrid& grid, double convention_prefactor) {
    const DerivedParams params = derive_params(atoms, drive, convention_prefactor);
    validate_propagation_grid(grid, params);
    return propagate_full_core(in1, in2, make_coherence_params(atoms, drive, params), grid);
}

TierReport compare_tiers(const PulseEnvelope& in1, const AtomicSystem& atoms,
                         const DriveConfig& drive, const PropagationGrid& grid,
                         double convention_prefactor, double flag_threshold) {
    const DerivedParams params = derive_params(atoms, drive, convention_prefactor);
    PulseEnvelope vac = in1;
    vac.carrier = 2;
    std::fill(vac.samples.begin(), vac.samples.end(), Complex(0.0));

    TierReport r;
    {
        const FieldHistory h = analytic_history(in1, vac, params.beta, grid);
        const ConversionResult c = quantum_efficiency(h);
        r.eta_analytic = c.eta;
        r.fidelity_analytic = c.shape_fidelity;
    }
    {
        const FieldHistory h = propagate_reduced(in1, vac, params, grid);
        const ConversionResult c = quantum_efficiency(h);
        r.eta_reduced = c.eta;
        r.fidelity_reduced = c.shape_fidelity;
    }
    {
        const FieldHistory h = propagate_full(in1, vac, atoms, drive, grid, convention_prefactor);
        const ConversionResult c = quantum_efficiency(h);
        r.eta_full = c.eta;
        r.fidelity_full = c.shape_fidelity;
    }
    r.max_eta_difference = std::max({std::abs(r.eta_analytic - r.eta_reduced),
                                     std::abs(r.eta_analytic - r.eta_full),
                                     std::abs(r.eta_reduced - r.eta_full)});
    r.consistent = r.max_eta_difference <= flag_threshold;
    return r;
}

void write_history_csv(const std::string& path, const FieldHistory& history, int decimate) {
    if (decimate < 1) {
        throw std::invalid_argument("decimate: must be >= 1");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << "z_m,tau_s,re_e1,im_e1,re_e2,im_e2\n";
    for (int m = 0; m < history.n_slices(); m += decimate) {
        for (int k = 0; k < history.tgrid.n_samples; k += decimate) {
            out << format_double(history.z(m)) << ',' << format_double(history.tgrid.time(k))
                << ',' << format_double(history.e1[m][k].real()) << ','
                << format_double(history.e1[m][k].imag()) << ','
                << format_double(history.e2[m][k].real()) << ','
                << format_double(history.e2[m][k].imag()) << '\n';
        }
    }
}

} // namespace qfc
