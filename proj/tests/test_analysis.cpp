#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "boxqd/analysis.hpp"
#include "boxqd/decoherence.hpp"
#include "boxqd/errors.hpp"
#include "boxqd/propagator.hpp"

using namespace boxqd;

namespace {

Eigen::VectorXcd uniform_on(const Grid& g, double a, double b) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.n_points()));
    for (std::size_t i = 0; i < g.n_points(); ++i) {
        if (g.x(i) >= a && g.x(i) < b) v[static_cast<Eigen::Index>(i)] = 1.0;
    }
    return v / std::sqrt(v.squaredNorm() * g.dx());
}

}  // namespace

TEST_CASE("density_profile") {
    const Grid g = make_grid(2048, 1.0);
    const auto prof = density_profile(gaussian_packet(g, PhysicalParams{}));
    const auto peak = std::max_element(prof.begin(), prof.end());
    CHECK(*peak == doctest::Approx(7.979).epsilon(1e-3));
    CHECK(std::abs(g.x(static_cast<std::size_t>(peak - prof.begin())) - 0.5) <= g.dx());
    CHECK(find_nodes(prof, g, 0.02).node_positions.empty());

    const Grid h = make_grid(1001, 1.0);  // x = 0.5 is grid point 500
    const auto phi = density_profile(sine_mode(h, 1));
    for (std::size_t i = 0; i < h.n_points(); ++i) {
        const double s = std::sin(std::numbers::pi * h.x(i));
        CHECK(phi[i] == doctest::Approx(2.0 * s * s).epsilon(1e-12));
    }
    CHECK(phi[499] == doctest::Approx(phi[501]).epsilon(1e-13));  // zero slope mid-box
}

TEST_CASE("find_nodes") {
    const Grid g = make_grid(999, 1.0);

    std::vector<double> bump(g.n_points());
    for (std::size_t i = 0; i < bump.size(); ++i) bump[i] = 1.0 + std::exp(-std::pow((g.x(i) - 0.4) / 0.1, 2));
    const BlockPartition single = find_nodes(bump, g, 0.02);
    CHECK(single.node_positions.empty());
    REQUIRE(single.blocks.size() == 1);
    CHECK(single.blocks[0] == IndexRange{0, g.n_points()});

    for (const Grid& grid : {make_grid(999, 1.0), make_grid(1000, 1.0), make_grid(517, 2.0)}) {
        std::vector<double> s4(grid.n_points());
        for (std::size_t i = 0; i < s4.size(); ++i) {
            const double s = std::sin(4.0 * std::numbers::pi * grid.x(i) / grid.length());
            s4[i] = s * s;
        }
        const BlockPartition p = find_nodes(s4, grid, 0.02);
        REQUIRE(p.node_positions.size() == 3);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(p.node_positions[static_cast<std::size_t>(k)] - (k + 1) * grid.length() / 4.0) <
                  grid.dx());
        }
        CHECK(p.blocks.size() == 4);
        validate_partition(p, grid.n_points());
    }

    CHECK_THROWS_AS(find_nodes(bump, g, 0.0), ConfigError);
    CHECK_THROWS_AS(find_nodes(bump, g, 1.0), ConfigError);
}

TEST_CASE("eigenstate_width and ipr_length on analytic shapes") {
    const Grid g = make_grid(4000, 1.0);
    Eigen::VectorXcd spike = Eigen::VectorXcd::Zero(4000);
    spike[1234] = 1.0 / std::sqrt(g.dx());
    CHECK(eigenstate_width({spike.data(), 4000}, g) < 1e-12);
    CHECK(ipr_length({spike.data(), 4000}, g) == doctest::Approx(g.dx()).epsilon(1e-12));

    for (double w : {0.05, 0.2, 0.6}) {
        const Eigen::VectorXcd u = uniform_on(g, 0.3, 0.3 + w);
        CHECK(std::abs(eigenstate_width({u.data(), 4000}, g) - w / std::sqrt(12.0)) < g.dx());
        CHECK(std::abs(ipr_length({u.data(), 4000}, g) - w) < 2.0 * g.dx());
    }

    const WaveFunction phi1 = sine_mode(g, 1);
    CHECK(eigenstate_width(phi1.values(), g) ==
          doctest::Approx(std::sqrt(1.0 / 12.0 - 1.0 / (2.0 * std::numbers::pi * std::numbers::pi))).epsilon(1e-6));
    CHECK(eigenstate_width(phi1.values(), g) == doctest::Approx(0.18069).epsilon(1e-4));
    CHECK(ipr_length(phi1.values(), g) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("width measures agree on unimodal bumps") {
    const Grid g = make_grid(2000, 1.0);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> centre(0.3, 0.7), spread(0.005, 0.05), power(1.0, 4.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double c = centre(rng), s = spread(rng), q = power(rng);
        Eigen::VectorXcd v(2000);
        for (Eigen::Index i = 0; i < 2000; ++i) {
            v[i] = std::exp(-std::pow(std::abs(g.x(static_cast<std::size_t>(i)) - c) / s, q));
        }
        v /= std::sqrt(v.squaredNorm() * g.dx());
        const double width = eigenstate_width({v.data(), 2000}, g);
        const double ipr = ipr_length({v.data(), 2000}, g) / std::sqrt(12.0);
        CHECK(ipr / width < 4.0);
        CHECK(width / ipr < 4.0);
    }
}

TEST_CASE("max_block_fraction") {
    const Grid g = make_grid(40, 1.0);
    const BlockPartition p = partition_at({10, 30}, {g.x(10), g.x(30)}, 40);
    const Eigen::VectorXcd inside = uniform_on(g, g.x(12) - 1e-9, g.x(20));
    CHECK(max_block_fraction({inside.data(), 40}, p) == doctest::Approx(1.0));
    const Eigen::VectorXcd flat = uniform_on(g, 0.0, 1.0);
    CHECK(max_block_fraction({flat.data(), 40}, p) == doctest::Approx(0.5));
    CHECK(p.block_of(0) == 0);
    CHECK(p.block_of(10) == 1);
    CHECK(p.block_of(39) == 2);
}

TEST_CASE("localization_report without decoherence has one row of width |psi|") {
    const Grid g = make_grid(512, 1.0);
    const PhysicalParams params;
    CHECK(de_broglie_wavelength(params) == doctest::Approx(0.209440).epsilon(1e-6));

    const WaveFunction psi = evolve(gaussian_packet(g, params), 0.5, params);
    const EigenDecomposition eig = eigh(pure_density(psi));
    const LocalizationReport rep = localization_report(eig, psi, params, 0.01, 0.9);
    REQUIRE(rep.rows.size() == 1);
    const double psi_width = eigenstate_width(psi.values(), g);
    CHECK(rep.rows[0].width_std == doctest::Approx(psi_width).epsilon(1e-8));
    CHECK(psi_width > 0.25);
    CHECK(psi_width < 1.0 / std::sqrt(12.0) + g.dx());
    CHECK(rep.summary.effective_rank == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.summary.weight_fraction_below == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(rep.summary.lambda_db == doctest::Approx(2.0 * std::numbers::pi / 30.0));

    CHECK_THROWS_AS(localization_report(eig, psi, params, 0.01, 0.0), ConfigError);
    CHECK_THROWS_AS(localization_report(eig, psi, params, 0.01, 1.5), ConfigError);
}

TEST_CASE("mirror symmetry of the report") {
    const Grid g = make_grid(256, 1.0);
    const PhysicalParams params;
    const WaveFunction psi = evolve(gaussian_packet(g, params), 0.37, params);
    const WaveFunction mirrored(g, psi.amps().reverse());

    const double d = 0.02;
    const auto eig_a = eigh(apply_decoherence(pure_density(psi), d));
    const auto eig_b = eigh(apply_decoherence(pure_density(mirrored), d));
    const auto ra = localization_report(eig_a, psi, params, d, 0.9);
    const auto rb = localization_report(eig_b, mirrored, params, d, 0.9);
    REQUIRE(ra.rows.size() == rb.rows.size());

    std::vector<double> wa, wb, xa, xb;
    for (const auto& r : ra.rows) {
        wa.push_back(r.width_std);
        xa.push_back(r.mean_x);
    }
    for (const auto& r : rb.rows) {
        wb.push_back(r.width_std);
        xb.push_back(1.0 - r.mean_x);
    }
    std::sort(wa.begin(), wa.end());
    std::sort(wb.begin(), wb.end());
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    for (std::size_t i = 0; i < wa.size(); ++i) {
        CHECK(std::abs(wa[i] - wb[i]) < 1e-8);
        CHECK(std::abs(xa[i] - xb[i]) < 1e-8);
    }
}
