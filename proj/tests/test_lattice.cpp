#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "boxqd/errors.hpp"
#include "boxqd/lattice.hpp"
#include "boxqd/propagator.hpp"

using namespace boxqd;

TEST_CASE("make_grid builds the interior Dirichlet lattice") {
    const Grid g = make_grid(8, 1.0);
    CHECK(g.dx() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    for (std::size_t i = 0; i < 8; ++i) CHECK(g.x(i) == doctest::Approx((i + 1) / 9.0).epsilon(1e-15));

    const Grid big = make_grid(2048, 1.0);
    CHECK(big.dx() == doctest::Approx(1.0 / 2049.0).epsilon(1e-15));
    CHECK(big.dx() == doctest::Approx(4.8804e-4).epsilon(1e-4));
    CHECK(std::abs(big.dx() * 2049.0 - 1.0) < 1e-12);
    CHECK(big.x(0) > 0.0);
    CHECK(big.x(2047) < 1.0);
    for (std::size_t i = 1; i < big.n_points(); ++i) REQUIRE(big.x(i) > big.x(i - 1));
}

TEST_CASE("make_grid rejects bad sizes") {
    CHECK_THROWS_AS(make_grid(7, 1.0), ConfigError);
    CHECK_THROWS_AS(make_grid(3, 1.0), ConfigError);
    CHECK_THROWS_AS(make_grid(64, 0.0), ConfigError);
    CHECK_THROWS_AS(make_grid(64, -1.0), ConfigError);
}

TEST_CASE("gaussian_packet for the reference parameters") {
    const Grid g = make_grid(2048, 1.0);
    const PhysicalParams p;  // p0 = 30, q0 = 0.5, sigma = 0.05
    const WaveFunction psi = gaussian_packet(g, p);

    CHECK(std::abs(norm2(psi) - 1.0) < 1e-10);
    CHECK(gaussian_tail_mass(p, 1.0) < std::exp(-50.0));

    // q0 = 0.5 falls on grid index 1023 (x = 1024 / 2049 is the nearest point).
    double peak = 0.0;
    for (auto z : psi.values()) peak = std::max(peak, std::norm(z));
    CHECK(peak == doctest::Approx(1.0 / (0.05 * std::sqrt(2.0 * std::numbers::pi))).epsilon(1e-3));
    CHECK(peak == doctest::Approx(7.97885).epsilon(1e-3));

    const PositionMoments mo = position_moments(psi.values(), g);
    CHECK(std::abs(mo.mean - 0.5) <= g.dx());
    CHECK(mo.std == doctest::Approx(0.05).epsilon(1e-6));

    const auto c = oracle::direct_sine_coeffs(psi, 200);
    const double p_mean = oracle::momentum_expectation(c, 1.0, 1.0);
    CHECK(std::abs(p_mean - 30.0) < 0.3);
}

TEST_CASE("gaussian_packet detects tail leakage") {
    const Grid g = make_grid(256, 1.0);
    PhysicalParams p;
    p.q0 = 0.1;  // 2 sigma from the wall
    CHECK_THROWS_AS(gaussian_packet(g, p), TailLeakError);
    p.q0 = 0.5;
    p.sigma = 0.2;
    CHECK_THROWS_AS(gaussian_packet(g, p), TailLeakError);
    p.sigma = -1.0;
    CHECK_THROWS_AS(gaussian_packet(g, p), ConfigError);
}

TEST_CASE("norm2 basic values") {
    const Grid g = make_grid(16, 1.0);
    CHECK(norm2(WaveFunction(g, Eigen::VectorXcd::Zero(16))) == 0.0);
    Eigen::VectorXcd spike = Eigen::VectorXcd::Zero(16);
    spike[5] = 1.0 / std::sqrt(g.dx());
    CHECK(norm2(WaveFunction(g, spike)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normalization is idempotent") {
    std::mt19937_64 rng(7);
    const Grid g = make_grid(333, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
        const WaveFunction once = oracle::random_state(rng, g);
        const WaveFunction twice = normalized(once);
        const double rel = (twice.amps() - once.amps()).norm() / once.amps().norm();
        CHECK(rel < 1e-14);
    }
}

TEST_CASE("fidelity properties") {
    const Grid g = make_grid(128, 1.0);
    const WaveFunction psi = gaussian_packet(g, PhysicalParams{});
    CHECK(std::abs(fidelity(psi, psi) - 1.0) < 1e-12);

    const WaveFunction rotated(g, psi.amps() * std::polar(1.0, 0.731));
    CHECK(std::abs(fidelity(psi, rotated) - 1.0) < 1e-12);

    CHECK(fidelity(sine_mode(g, 1), sine_mode(g, 2)) < 1e-12);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const WaveFunction a = oracle::random_state(rng, g);
        const WaveFunction b = oracle::random_state(rng, g);
        const WaveFunction b_phase(g, b.amps() * std::polar(1.0, 2.0 * trial));
        const double f = fidelity(a, b);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
        CHECK(std::abs(fidelity(b, a) - f) < 1e-14);
        CHECK(std::abs(fidelity(a, b_phase) - f) < 1e-14);
        CHECK(std::abs(inner(b, a) - std::conj(inner(a, b))) < 1e-14);
    }

    CHECK_THROWS_AS(fidelity(psi, sine_mode(make_grid(64, 1.0), 1)), GridMismatchError);
    CHECK_THROWS_AS(fidelity(psi, sine_mode(make_grid(128, 2.0), 1)), GridMismatchError);
}
