#include "boxqd/lattice.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "boxqd/errors.hpp"
#include "boxqd/numeric.hpp"

namespace boxqd {

Grid make_grid(std::size_t n_points, double length) {
    if (n_points < kMinGridPoints) {
        throw ConfigError("n_points", "must be >= " + std::to_string(kMinGridPoints) + ", got " +
                                          std::to_string(n_points));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError("L", "box length must be positive and finite");
    }
    const double dx = length / static_cast<double>(n_points + 1);
    std::vector<double> coords(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        coords[i] = static_cast<double>(i + 1) * dx;
    }
    return Grid(length, dx, std::move(coords));
}

void PhysicalParams::validate(double length) const {
    auto require = [](bool ok, const char* field, const char* what) {
        if (!ok) throw ConfigError(field, what);
    };
    require(std::isfinite(hbar) && hbar > 0.0, "hbar", "must be positive");
    require(std::isfinite(mass) && mass > 0.0, "m", "must be positive");
    require(std::isfinite(p0), "p0", "must be finite");
    require(std::isfinite(sigma) && sigma > 0.0, "sigma", "must be positive");
    require(std::isfinite(q0) && q0 > 0.0 && q0 < length, "q0", "must lie strictly inside (0, L)");
}

WaveFunction::WaveFunction(Grid grid, Eigen::VectorXcd amps) : grid_(std::move(grid)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != grid_.n_points()) {
        throw GridMismatchError("amplitude count " + std::to_string(amps_.size()) + " != grid size " +
                                std::to_string(grid_.n_points()));
    }
}

double gaussian_tail_mass(const PhysicalParams& params, double length) {
    const double s = params.sigma * std::sqrt(2.0);
    return 0.5 * std::erfc(params.q0 / s) + 0.5 * std::erfc((length - params.q0) / s);
}

WaveFunction gaussian_packet(const Grid& grid, const PhysicalParams& params) {
    params.validate(grid.length());
    const double tail = gaussian_tail_mass(params, grid.length());
    if (tail > kMaxTailMass) {
        std::ostringstream msg;
        msg << "Gaussian packet leaks outside the box: tail mass " << tail << " > " << kMaxTailMass;
        throw TailLeakError(tail, msg.str());
    }

    const double inv4s2 = 1.0 / (4.0 * params.sigma * params.sigma);
    const double k0 = params.p0 / params.hbar;
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(grid.n_points()));
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        const double u = grid.x(i) - params.q0;
        amps[static_cast<Eigen::Index>(i)] = std::polar(std::exp(-u * u * inv4s2), k0 * u);
    }
    return normalized(WaveFunction(grid, std::move(amps)));
}

double norm2(const WaveFunction& wf) {
    std::vector<double> w(wf.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(wf.values()[i]);
    return pairwise_sum(w) * wf.grid().dx();
}

WaveFunction normalized(const WaveFunction& wf) {
    const double n = norm2(wf);
    if (n == 0.0) return wf;
    return WaveFunction(wf.grid(), wf.amps() / std::sqrt(n));
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
    if (!a.grid().same_as(b.grid())) {
        throw GridMismatchError("inner product of wave functions on different grids");
    }
    std::vector<double> re(a.size()), im(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx z = std::conj(a.values()[i]) * b.values()[i];
        re[i] = z.real();
        im[i] = z.imag();
    }
    return cplx(pairwise_sum(re), pairwise_sum(im)) * a.grid().dx();
}

double fidelity(const WaveFunction& a, const WaveFunction& b) {
    return std::norm(inner(a, b));
}

PositionMoments position_moments(std::span<const cplx> v, const Grid& grid) {
    const std::size_t n = v.size();
    if (n != grid.n_points()) throw GridMismatchError("vector length does not match the grid");
    std::vector<double> w(n), wx(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::norm(v[i]);
        wx[i] = w[i] * grid.x(i);
    }
    const double total = pairwise_sum(w);
    if (total == 0.0) return {};
    const double mean = pairwise_sum(wx) / total;
    // Central second moment avoids cancellation in <x^2> - <x>^2.
    for (std::size_t i = 0; i < n; ++i) {
        const double u = grid.x(i) - mean;
        wx[i] = w[i] * u * u;
    }
    return {mean, std::sqrt(pairwise_sum(wx) / total)};
}

}  // namespace boxqd
