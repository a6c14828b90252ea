#include "qfc/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qfc {

namespace {

double centroid(const std::vector<Complex>& f, const TimeGrid& grid) {
    double mass = 0.0;
    double moment = 0.0;
    for (int k = 0; k < grid.n_samples; ++k) {
        const double w = std::norm(f[k]);
        mass += w;
        moment += w * grid.time(k);
    }
    return moment / mass;
}

} // namespace

double intensity(const FieldHistory& history, int carrier, int iz, int it) {
    if (carrier != 1 && carrier != 2) {
        throw std::invalid_argument("intensity: carrier must be 1 or 2");
    }
    if (iz < 0 || iz >= history.n_slices() || it < 0 || it >= history.tgrid.n_samples) {
        throw std::invalid_argument("intensity: (z,t) index off grid");
    }
    const auto& f = (carrier == 1) ? history.e1[iz] : history.e2[iz];
    return std::norm(f[it]);
}

ConversionResult quantum_efficiency(const FieldHistory& history) {
    const int last = history.n_slices() - 1;
    const double n1_0 = history.photon_number_at(1, 0);
    const double n2_0 = history.photon_number_at(2, 0);
    const double n1_L = history.photon_number_at(1, last);
    const double n2_L = history.photon_number_at(2, last);
    if (n1_0 < 1e-12) {
        throw std::invalid_argument("quantum_efficiency: input photon number below 1e-12");
    }
    if (std::abs(n1_0 - 1.0) > 1e-6) {
        throw std::invalid_argument(
            "quantum_efficiency: input must be a normalized single photon at carrier 1");
    }

    ConversionResult r;
    r.eta = n2_L / n1_0;
    r.residual_n1 = n1_L;
    r.conservation_residual = std::abs(n1_L + n2_L - n1_0 - n2_0);

    const PulseEnvelope in1 = history.slice(1, 0);
    const double in_centroid = centroid(history.e1[0], history.tgrid);
    if (n2_L >= 1e-12) {
        const PulseEnvelope out2 = history.slice(2, last);
        const double shift = centroid(history.e2[last], history.tgrid) - in_centroid;
        r.shape_fidelity = overlap_fidelity(out2, shift_envelope(in1, shift));
        r.delay = shift + history.zgrid.length() / history.zgrid.v_ref;
    } else {
        r.shape_fidelity = 0.0;
        const double shift = centroid(history.e1[last], history.tgrid) - in_centroid;
        r.delay = shift + history.zgrid.length() / history.zgrid.v_ref;
    }
    return r;
}

double complete_conversion_residual(const FieldHistory& history) {
    const double n1_0 = history.photon_number_at(1, 0);
    if (n1_0 < 1e-12) {
        throw std::invalid_argument(
            "complete_conversion_residual: input photon number below 1e-12");
    }
    return std::sqrt(history.photon_number_at(1, history.n_slices() - 1) / n1_0);
}

QubitTransferResult convert_time_bin_qubit(const TimeBinQubit& qubit, Tier tier,
                                           const AtomicSystem& atoms, const DriveConfig& drive,
                                           const PropagationGrid& grid,
                                           double convention_prefactor) {
    qubit.validate();
    const PulseEnvelope input = qubit_envelope(qubit);
    PulseEnvelope vac = input;
    vac.carrier = 2;
    std::fill(vac.samples.begin(), vac.samples.end(), Complex(0.0));

    const DerivedParams params = derive_params(atoms, drive, convention_prefactor);
    FieldHistory history;
    switch (tier) {
        case Tier::analytic:
            history = analytic_history(input, vac, params.beta, grid);
            break;
        case Tier::reduced:
            history = propagate_reduced(input, vac, params, grid);
            break;
        case Tier::full:
            history = propagate_full(input, vac, atoms, drive, grid, convention_prefactor);
            break;
    }

    const PulseEnvelope out2 = history.slice(2, history.n_slices() - 1);
    const QubitDecomposition d = decompose_qubit(out2, qubit.bin_profile, qubit.tau);

    QubitTransferResult r;
    const Complex inner = std::conj(qubit.a) * d.a + std::conj(qubit.b) * d.b;
    r.global_phase = std::arg(inner);
    const Complex rot = std::exp(Complex(0.0, -r.global_phase));
    r.a_out = d.a * rot;
    r.b_out = d.b * rot;
    r.leakage = d.leakage;
    const double norm_out = std::norm(d.a) + std::norm(d.b);
    if (norm_out < 1e-24) {
        throw numerical_error("convert_time_bin_qubit: no light reached the output bins");
    }
    r.qubit_fidelity = std::norm(inner) / norm_out;
    return r;
}

} // namespace qfc
