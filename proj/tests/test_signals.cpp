// Pulse-envelope checks. The Gaussian overlap oracle is closed form: for two
// unit-normalized Gaussians of intensity FWHM T offset by d,
//   fidelity = exp(-2 ln2 (d/T)^2) = 2^(-2 (d/T)^2),
// so d = T gives exactly 1/4 and d = T/2 gives 2^(-1/2).

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "qfc/signals.hpp"

using namespace qfc;

namespace {

TimeGrid wide_grid(double width) {
    const double dt = width / 40.0;
    const int n = static_cast<int>(std::round(2 * 16.0 * width / dt)) + 1;
    return TimeGrid{-16.0 * width, 16.0 * width, n};
}

} // namespace

TEST_CASE("signals: grid invariants") {
    CHECK_THROWS_AS((TimeGrid{0.0, 0.0, 8}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 1}.validate()), std::invalid_argument);
    const TimeGrid g{-1.0, 1.0, 5};
    g.validate();
    CHECK(g.dt() == doctest::Approx(0.5));
    CHECK(g.time(4) == doctest::Approx(1.0));
}

TEST_CASE("signals: gaussian pulse is a normalized single photon") {
    const double T = 20e-9;
    const PulseEnvelope p = gaussian_pulse(0.0, T, wide_grid(T));
    CHECK(photon_number(p) == doctest::Approx(1.0).epsilon(1e-9));

    // intensity full width at half maximum equals width_T
    const int mid = p.grid.n_samples / 2;
    const int half_off = static_cast<int>(std::round(0.5 * T / p.grid.dt()));
    const double ratio = std::norm(p.samples[mid + half_off]) / std::norm(p.samples[mid]);
    CHECK(ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("signals: photon number") {
    const double T = 10e-9;
    PulseEnvelope p = gaussian_pulse(0.0, T, wide_grid(T));

    SUBCASE("zero envelope") {
        for (auto& s : p.samples) s = 0.0;
        CHECK(photon_number(p) == 0.0);
    }
    SUBCASE("quadratic in a complex scale") {
        const Complex c{0.3, -1.7};
        PulseEnvelope q = p;
        for (auto& s : q.samples) s *= c;
        CHECK(photon_number(q) == doctest::Approx(std::norm(c) * photon_number(p)).epsilon(1e-12));
    }
    SUBCASE("invariant under time translation on a long grid") {
        const PulseEnvelope q = gaussian_pulse(3.0 * T, T, wide_grid(T));
        CHECK(photon_number(q) == doctest::Approx(photon_number(p)).epsilon(1e-9));
    }
}

TEST_CASE("signals: overlap fidelity") {
    const double T = 10e-9;
    const TimeGrid grid = wide_grid(T);
    const PulseEnvelope p = gaussian_pulse(0.0, T, grid);

    SUBCASE("self overlap and global phase invariance") {
        CHECK(overlap_fidelity(p, p) == doctest::Approx(1.0).epsilon(1e-12));
        PulseEnvelope q = p;
        for (auto& s : q.samples) s *= Complex(0.0, 1.0);
        CHECK(overlap_fidelity(p, q) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("offset Gaussians against the closed-form value") {
        const PulseEnvelope q1 = gaussian_pulse(T, T, grid);
        CHECK(overlap_fidelity(p, q1) == doctest::Approx(0.25).epsilon(1e-9));
        const PulseEnvelope qh = gaussian_pulse(0.5 * T, T, grid);
        CHECK(overlap_fidelity(p, qh) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-9));
        // bins shifted by 10 T are numerically orthogonal
        const PulseEnvelope qfar = gaussian_pulse(10.0 * T, T, grid);
        CHECK(overlap_fidelity(p, qfar) < 1e-6);
    }
    SUBCASE("symmetric and invariant under a joint phase") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        PulseEnvelope q = gaussian_pulse(0.7 * T, 1.3 * T, grid);
        for (auto& s : q.samples) s *= Complex(u(rng), u(rng));
        const double f1 = overlap_fidelity(p, q);
        CHECK(overlap_fidelity(q, p) == doctest::Approx(f1).epsilon(1e-12));
        const Complex joint = std::polar(1.0, 0.83);
        PulseEnvelope p2 = p, q2 = q;
        for (auto& s : p2.samples) s *= joint;
        for (auto& s : q2.samples) s *= joint;
        CHECK(overlap_fidelity(p2, q2) == doctest::Approx(f1).epsilon(1e-12));
    }
    SUBCASE("rejects empty envelopes and mismatched grids") {
        PulseEnvelope zero = p;
        for (auto& s : zero.samples) s = 0.0;
        CHECK_THROWS_AS(overlap_fidelity(p, zero), std::invalid_argument);
        PulseEnvelope other = gaussian_pulse(0.0, T, TimeGrid{-20.0 * T, 20.0 * T, 1601});
        CHECK_THROWS_AS(overlap_fidelity(p, other), std::invalid_argument);
    }
}

TEST_CASE("signals: short grid is rejected with a truncation estimate") {
    const double T = 10e-9;
    const TimeGrid grid{-2.0 * T, 2.0 * T, 161};
    CHECK_THROWS_WITH_AS(gaussian_pulse(0.0, T, grid), doctest::Contains("truncation"),
                         std::invalid_argument);
}

TEST_CASE("signals: time-bin qubit compose/decompose round trip") {
    const double T = 10e-9;
    const TimeGrid grid{-6.0 * T, 14.0 * T, 801};
    const PulseEnvelope bin = gaussian_pulse(0.0, T, grid);

    std::mt19937 rng(2024);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 20; ++trial) {
        Complex a{n01(rng), n01(rng)};
        Complex b{n01(rng), n01(rng)};
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        a /= norm;
        b /= norm;
        const double tau = (trial % 2 == 0) ? 5.0 * T : 6.0 * T;
        const TimeBinQubit qubit{a, b, bin, T, tau};
        const PulseEnvelope env = qubit_envelope(qubit);
        CHECK(photon_number(env) == doctest::Approx(1.0).epsilon(1e-7));

        const QubitDecomposition d = decompose_qubit(env, bin, tau);
        CHECK(std::abs(d.a - a) < 1e-8);
        CHECK(std::abs(d.b - b) < 1e-8);
        CHECK(d.leakage < 1e-8);
    }
}

TEST_CASE("signals: qubit invariants") {
    const double T = 10e-9;
    const TimeGrid grid{-6.0 * T, 14.0 * T, 801};
    const PulseEnvelope bin = gaussian_pulse(0.0, T, grid);

    TimeBinQubit bad_norm{Complex(1.0), Complex(0.5), bin, T, 6.0 * T};
    CHECK_THROWS_WITH_AS(bad_norm.validate(), doctest::Contains("|a|^2"), std::invalid_argument);

    TimeBinQubit overlapping{Complex(1.0), Complex(0.0), bin, T, 3.0 * T};
    CHECK_THROWS_WITH_AS(overlapping.validate(), doctest::Contains("tau"), std::invalid_argument);

    // at tau = 5T the shifted-profile cross-overlap is ~3e-8 < 1e-6
    TimeBinQubit ok{Complex(1.0), Complex(0.0), bin, T, 5.0 * T};
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("signals: envelope CSV round trip is bit exact") {
    const double T = 10e-9;
    const PulseEnvelope p = gaussian_pulse(0.0, T, TimeGrid{-5.0 * T, 5.0 * T, 401});
    const auto path = std::filesystem::temp_directory_path() / "qfc_envelope_roundtrip.csv";
    write_envelope_csv(path.string(), p);
    const PulseEnvelope q = read_envelope_csv(path.string());
    REQUIRE(q.grid.n_samples == p.grid.n_samples);
    CHECK(q.grid.t_start == p.grid.t_start);
    CHECK(q.grid.t_end == p.grid.t_end);
    for (int k = 0; k < p.grid.n_samples; ++k) {
        CHECK(q.samples[k] == p.samples[k]);
    }
    std::filesystem::remove(path);
}
