#include "qfc/signals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qfc/constants.hpp"
#include "qfc/csv.hpp"

namespace qfc {

void TimeGrid::validate() const {
    if (!(t_end > t_start)) {
        throw std::invalid_argument("grid.t_end: must be greater than t_start");
    }
    if (n_samples < 2) {
        throw std::invalid_argument("grid.n_samples: must be at least 2");
    }
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
        throw std::invalid_argument("grid.t_start/t_end: must be finite");
    }
}

PulseEnvelope gaussian_pulse(double center, double width_T, const TimeGrid& grid, int carrier) {
    grid.validate();
    if (!(width_T > 0.0)) {
        throw std::invalid_argument("pulse.width: must be strictly positive");
    }
    if (grid.t_start > center - 5.0 * width_T || grid.t_end < center + 5.0 * width_T) {
        // Intensity mass outside [lo, hi] is erfc-shaped: the intensity profile
        // exp(-4 ln2 t^2/T^2) integrates to erfc(sqrt(4 ln2) |t|/T)/2 per tail.
        const double s = std::sqrt(4.0 * std::log(2.0)) / width_T;
        const double lo = grid.t_start - center;
        const double hi = grid.t_end - center;
        const double loss = 0.5 * std::erfc(s * hi) + 0.5 * std::erfc(-s * lo);
        throw std::invalid_argument(
            "grid: must span pulse center +- 5*width; truncation would lose ~" +
            format_double(loss) + " of the photon number");
    }

    PulseEnvelope p;
    p.grid = grid;
    p.carrier = carrier;
    p.samples.resize(grid.n_samples);
    const double a = 2.0 * std::log(2.0) / (width_T * width_T);
    for (int k = 0; k < grid.n_samples; ++k) {
        const double t = grid.time(k) - center;
        p.samples[k] = std::exp(-a * t * t);
    }
    const double n = photon_number(p);
    const double scale = 1.0 / std::sqrt(n);
    for (auto& s : p.samples) {
        s *= scale;
    }
    return p;
}

double photon_number(const PulseEnvelope& p) {
    double sum = 0.0;
    for (const auto& s : p.samples) {
        sum += std::norm(s);
    }
    return sum * p.grid.dt();
}

double overlap_fidelity(const PulseEnvelope& p, const PulseEnvelope& q) {
    if (!(p.grid == q.grid)) {
        throw std::invalid_argument("overlap_fidelity: envelopes must share one grid");
    }
    const double np = photon_number(p);
    const double nq = photon_number(q);
    if (np < 1e-12 || nq < 1e-12) {
        throw std::invalid_argument("overlap_fidelity: photon number below 1e-12, undefined");
    }
    Complex inner = 0.0;
    for (int k = 0; k < p.grid.n_samples; ++k) {
        inner += std::conj(p.samples[k]) * q.samples[k];
    }
    inner *= p.grid.dt();
    return std::norm(inner) / (np * nq);
}

PulseEnvelope shift_envelope(const PulseEnvelope& p, double delay) {
    PulseEnvelope out = p;
    const double dt = p.grid.dt();
    const int n = p.grid.n_samples;
    for (int k = 0; k < n; ++k) {
        const double x = k - delay / dt; // sample position in the source envelope
        const int i = static_cast<int>(std::floor(x));
        const double w = x - i;
        Complex a = (i >= 0 && i < n) ? p.samples[i] : Complex(0.0);
        Complex b = (i + 1 >= 0 && i + 1 < n) ? p.samples[i + 1] : Complex(0.0);
        out.samples[k] = (1.0 - w) * a + w * b;
    }
    return out;
}

void TimeBinQubit::validate() const {
    const double norm = std::norm(a) + std::norm(b);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("qubit: |a|^2 + |b|^2 must equal 1 within 1e-9");
    }
    if (!(width_T > 0.0)) {
        throw std::invalid_argument("qubit.width: must be strictly positive");
    }
    if (tau < 5.0 * width_T) {
        throw std::invalid_argument("qubit.tau: bins overlap, require tau >= 5*width");
    }
    const PulseEnvelope shifted = shift_envelope(bin_profile, tau);
    const double cross = overlap_fidelity(bin_profile, shifted);
    if (cross >= 1e-6) {
        throw std::invalid_argument("qubit: cross-overlap of shifted bin profiles is " +
                                    format_double(cross) + ", must be below 1e-6");
    }
}

PulseEnvelope qubit_envelope(const TimeBinQubit& qubit) {
    qubit.validate();
    PulseEnvelope out = qubit.bin_profile;
    const PulseEnvelope late = shift_envelope(qubit.bin_profile, qubit.tau);
    for (int k = 0; k < out.grid.n_samples; ++k) {
        out.samples[k] = qubit.a * qubit.bin_profile.samples[k] + qubit.b * late.samples[k];
    }
    return out;
}

QubitDecomposition decompose_qubit(const PulseEnvelope& envelope,
                                   const PulseEnvelope& bin_profile, double tau) {
    if (!(envelope.grid == bin_profile.grid)) {
        throw std::invalid_argument("decompose_qubit: envelope and template grids differ");
    }
    const PulseEnvelope late = shift_envelope(bin_profile, tau);
    const double dt = envelope.grid.dt();
    const int n = envelope.grid.n_samples;

    auto inner = [&](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        Complex s = 0.0;
        for (int k = 0; k < n; ++k) {
            s += std::conj(x[k]) * y[k];
        }
        return s * dt;
    };

    // 2x2 Gram system removes the residual bin overlap from the projection.
    const Complex g11 = inner(bin_profile.samples, bin_profile.samples);
    const Complex g22 = inner(late.samples, late.samples);
    const Complex g12 = inner(bin_profile.samples, late.samples);
    const Complex p1 = inner(bin_profile.samples, envelope.samples);
    const Complex p2 = inner(late.samples, envelope.samples);
    const Complex det = g11 * g22 - g12 * std::conj(g12);
    if (std::abs(det) < 1e-12 * std::abs(g11 * g22)) {
        throw std::invalid_argument("decompose_qubit: bin templates are degenerate");
    }
    QubitDecomposition d;
    d.a = (g22 * p1 - g12 * p2) / det;
    d.b = (g11 * p2 - std::conj(g12) * p1) / det;
    const double projected =
        std::real(std::conj(d.a) * (g11 * d.a + g12 * d.b) +
                  std::conj(d.b) * (std::conj(g12) * d.a + g22 * d.b));
    d.leakage = std::max(0.0, photon_number(envelope) - projected);
    return d;
}

void write_envelope_csv(const std::string& path, const PulseEnvelope& p) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << "t_s,re,im\n";
    for (int k = 0; k < p.grid.n_samples; ++k) {
        out << format_double(p.grid.time(k)) << ',' << format_double(p.samples[k].real()) << ','
            << format_double(p.samples[k].imag()) << '\n';
    }
}

PulseEnvelope read_envelope_csv(const std::string& path, int carrier) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open envelope file: " + path);
    }
    std::vector<double> t;
    std::vector<Complex> f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        double vals[3];
        int i = 0;
        bool numeric = true;
        while (i < 3 && std::getline(ss, cell, ',')) {
            try {
                vals[i] = std::stod(cell);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
            ++i;
        }
        if (!numeric && lineno == 1) {
            continue; // header
        }
        if (!numeric || i != 3) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected three numeric columns t_s,re,im");
        }
        t.push_back(vals[0]);
        f.emplace_back(vals[1], vals[2]);
    }
    if (t.size() < 2) {
        throw std::invalid_argument(path + ": envelope needs at least two samples");
    }
    PulseEnvelope p;
    p.grid = TimeGrid{t.front(), t.back(), static_cast<int>(t.size())};
    p.grid.validate();
    const double dt = p.grid.dt();
    for (size_t k = 0; k + 1 < t.size(); ++k) {
        if (std::abs(t[k + 1] - t[k] - dt) > 1e-9 * std::abs(dt)) {
            throw std::invalid_argument(path + ": time samples must be uniformly spaced");
        }
    }
    p.samples = std::move(f);
    p.carrier = carrier;
    return p;
}

} // namespace qfc
