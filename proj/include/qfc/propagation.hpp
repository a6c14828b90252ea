#ifndef QFC_PROPAGATION_HPP
#define QFC_PROPAGATION_HPP

#include <string>
#include <vector>

#include "qfc/coherence.hpp"
#include "qfc/physical_model.hpp"
#include "qfc/signals.hpp"
#include "qfc/types.hpp"

namespace qfc {

enum class Tier { analytic, reduced, full };

const char* tier_name(Tier tier);
Tier tier_from_name(const std::string& name);

// z discretization plus the co-moving frame tau = t - z/v_ref. The default
// reference velocity is the harmonic mean 2 v1 v2/(v1+v2), which centers the
// walk-off between the two carriers.
struct PropagationGrid {
    int n_z = 0;
    double dz = 0.0;
    double v_ref = 0.0;

    static PropagationGrid make(double length, int n_z, double v_ref);
    double length() const { return n_z * dz; }
};

// Rejects grids too coarse for the conversion oscillation or the absorption
// scale: n_z >= 8, dz*beta <= 0.05, dz*kappa_i <= 0.05.
void validate_propagation_grid(const PropagationGrid& grid, const DerivedParams& params);

// Both field envelopes on the (z, tau) grid. Slice 0 holds the inputs verbatim.
struct FieldHistory {
    TimeGrid tgrid;
    PropagationGrid zgrid;
    std::vector<std::vector<Complex>> e1; // [n_z+1][n_samples]
    std::vector<std::vector<Complex>> e2;

    int n_slices() const { return zgrid.n_z + 1; }
    double z(int iz) const { return iz * zgrid.dz; }
    PulseEnvelope slice(int carrier, int iz) const;
    double photon_number_at(int carrier, int iz) const;
};

// Closed-form equal-velocity solution: unitary mixing of the two envelopes,
// out_i = in_i cos(beta z) + i in_j sin(beta z) at every tau.
std::pair<PulseEnvelope, PulseEnvelope> analytic_solution(const PulseEnvelope& in1,
                                                          const PulseEnvelope& in2, double beta,
                                                          double z);

FieldHistory analytic_history(const PulseEnvelope& in1, const PulseEnvelope& in2, double beta,
                              const PropagationGrid& grid);

// Lossless reduced coupled-wave model
//   (d/dz + (1/v_j) d/dt) E_j = i beta E_k ,
// marched in z with the explicit midpoint rule; the advection remainder in the
// co-moving frame uses centered differences (one-sided at the grid edges).
// Supports v1 != v2 (walk-off).
FieldHistory propagate_reduced(const PulseEnvelope& in1, const PulseEnvelope& in2,
                               const DerivedParams& params, const PropagationGrid& grid);

// Full model: fields advance through the bare-basis coherences obtained by
// RK4 integration of the dressed coherence equations at every slice
// (lossless-noise regime, Langevin terms zero, Delta k = 0 cancelled
// analytically). Same midpoint z-march as the reduced tier. Run check_regime
// first; violations degrade accuracy but are not errors here.
FieldHistory propagate_full(const PulseEnvelope& in1, const PulseEnvelope& in2,
                            const AtomicSystem& atoms, const DriveConfig& drive,
                            const PropagationGrid& grid, double convention_prefactor = 1.0);

// Same solver with explicit coherence parameters (e.g. a decoupled carrier via
// g2 = 0); skips the DerivedParams-based grid validation.
FieldHistory propagate_full_core(const PulseEnvelope& in1, const PulseEnvelope& in2,
                                 const CoherenceParams& coh, const PropagationGrid& grid);

struct TierReport {
    double eta_analytic = 0.0;
    double eta_reduced = 0.0;
    double eta_full = 0.0;
    double fidelity_analytic = 0.0;
    double fidelity_reduced = 0.0;
    double fidelity_full = 0.0;
    double max_eta_difference = 0.0;
    bool consistent = false; // max pairwise eta difference below the flag threshold
};

TierReport compare_tiers(const PulseEnvelope& in1, const AtomicSystem& atoms,
                         const DriveConfig& drive, const PropagationGrid& grid,
                         double convention_prefactor = 1.0, double flag_threshold = 0.05);

// CSV columns: z_m, tau_s, re_e1, im_e1, re_e2, im_e2; row-major in z then tau.
// decimate > 1 keeps every decimate-th slice and sample (first always kept).
void write_history_csv(const std::string& path, const FieldHistory& history, int decimate = 1);

} // namespace qfc

#endif
