#ifndef QFC_SIGNALS_HPP
#define QFC_SIGNALS_HPP

#include <string>
#include <vector>

#include "qfc/types.hpp"

namespace qfc {

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int n_samples = 0;

    double dt() const { return (t_end - t_start) / (n_samples - 1); }
    // exact at both endpoints so written grids reload bit-identically
    double time(int k) const { return k == n_samples - 1 ? t_end : t_start + k * dt(); }
    void validate() const;

    bool operator==(const TimeGrid&) const = default;
};

// Complex single-photon amplitude sampled on a uniform time grid. Samples
// are normalized so that photon number = sum |f_k|^2 * dt (units s^-1/2);
// the c/L quantization-volume prefactor is absorbed into the samples.
struct PulseEnvelope {
    TimeGrid grid;
    std::vector<Complex> samples;
    int carrier = 1; // which quantum field (1 or 2)
};

// Normalized Gaussian with intensity FWHM equal to width_T:
// |f(t)|^2 ~ exp(-4 ln2 (t-center)^2 / T^2), photon number = 1.
// The grid must span center +- 5*width_T; otherwise rejected with an estimate
// of the photon-number fraction the truncation would lose.
PulseEnvelope gaussian_pulse(double center, double width_T, const TimeGrid& grid,
                             int carrier = 1);

double photon_number(const PulseEnvelope& p);

// |<p|q>|^2 / (n_p * n_q), in [0,1]; 1 iff q is a complex multiple of p.
// Requires equal grids and photon numbers above 1e-12.
double overlap_fidelity(const PulseEnvelope& p, const PulseEnvelope& q);

// Envelope shifted later in time by delay (linear interpolation, zero outside).
PulseEnvelope shift_envelope(const PulseEnvelope& p, double delay);

// Single photon in a superposition of two temporal bins: amplitude a on the
// bin_profile template and b on the same template delayed by tau.
struct TimeBinQubit {
    Complex a;
    Complex b;
    PulseEnvelope bin_profile; // normalized single-bin template
    double width_T = 0.0;      // template width (s)
    double tau = 0.0;          // bin separation (s), tau >= 5*width_T

    void validate() const;
};

// a*g(t) + b*g(t - tau) on the template's grid.
PulseEnvelope qubit_envelope(const TimeBinQubit& qubit);

struct QubitDecomposition {
    Complex a;
    Complex b;
    double leakage = 0.0; // photon number orthogonal to the two-bin span
};

// Projects an envelope onto {g(t), g(t - tau)} through the bin Gram matrix,
// so small residual bin overlap does not bias the recovered amplitudes.
QubitDecomposition decompose_qubit(const PulseEnvelope& envelope,
                                   const PulseEnvelope& bin_profile, double tau);

// Plain-text CSV, three columns: t_s, re, im (one header line).
void write_envelope_csv(const std::string& path, const PulseEnvelope& p);
PulseEnvelope read_envelope_csv(const std::string& path, int carrier = 1);

} // namespace qfc

#endif
