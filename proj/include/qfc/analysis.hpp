#ifndef QFC_ANALYSIS_HPP
#define QFC_ANALYSIS_HPP

#include "qfc/propagation.hpp"
#include "qfc/signals.hpp"
#include "qfc/types.hpp"

namespace qfc {

struct ConversionResult {
    double eta = 0.0;                   // n2(L)/n1(0)
    double residual_n1 = 0.0;           // photon number left at carrier 1
    double conservation_residual = 0.0; // |n1(L)+n2(L) - n1(0)-n2(0)|
    double shape_fidelity = 0.0;        // output vs group-delayed input shape
    double delay = 0.0;                 // lab-frame group delay (s)
};

// |envelope|^2 at one grid point; off-grid queries are rejected.
double intensity(const FieldHistory& history, int carrier, int iz, int it);

// Requires a normalized single photon at carrier 1 (n1(0) = 1 +- 1e-6).
// The delay is the co-moving centroid shift plus L/v_ref; the shape template
// is the input envelope shifted by the measured centroid shift. With no
// converted light (n2 < 1e-12) fidelity is reported as 0 and the delay is
// measured on carrier 1 instead.
ConversionResult quantum_efficiency(const FieldHistory& history);

// sqrt(residual photon fraction at carrier 1); equals |cos(beta L)| in the
// analytic tier.
double complete_conversion_residual(const FieldHistory& history);

struct QubitTransferResult {
    Complex a_out;
    Complex b_out;
    double global_phase = 0.0;  // common phase removed from the raw projections
    double qubit_fidelity = 0.0;
    double leakage = 0.0;       // carrier-2 photon number outside the two bins
};

// Propagates the two-bin superposition at carrier 1, projects the carrier-2
// output onto the two bin templates (group-delayed by construction of the
// co-moving frame) and removes the common conversion phase.
QubitTransferResult convert_time_bin_qubit(const TimeBinQubit& qubit, Tier tier,
                                           const AtomicSystem& atoms, const DriveConfig& drive,
                                           const PropagationGrid& grid,
                                           double convention_prefactor = 1.0);

} // namespace qfc

#endif
