#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace boxqd {

using cplx = std::complex<double>;

// Interior-point Dirichlet lattice on (0, L): x_i = i * L / (N + 1), i = 1..N.
// The walls themselves are not stored; the wave function vanishes there.
class Grid {
public:
    std::size_t n_points() const noexcept { return coords_.size(); }
    double length() const noexcept { return length_; }
    double dx() const noexcept { return dx_; }
    std::span<const double> coords() const noexcept { return coords_; }
    double x(std::size_t i) const { return coords_[i]; }

    bool same_as(const Grid& other) const noexcept {
        return n_points() == other.n_points() && length_ == other.length_;
    }

private:
    friend Grid make_grid(std::size_t n_points, double length);
    Grid(double length, double dx, std::vector<double> coords)
        : length_(length), dx_(dx), coords_(std::move(coords)) {}

    double length_;
    double dx_;
    std::vector<double> coords_;
};

inline constexpr std::size_t kMinGridPoints = 8;

// Throws ConfigError for n_points < 8 or a non-positive length.
Grid make_grid(std::size_t n_points, double length);

struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;
    double p0 = 30.0;
    double q0 = 0.5;
    // Standard deviation of the initial position density |psi_0|^2.
    double sigma = 0.05;

    // Throws ConfigError naming the first offending field.
    void validate(double length) const;
};

// Complex amplitudes psi(x_i) sampled on a grid. Continuum normalization:
// sum_i |psi_i|^2 dx = 1 for physical states.
class WaveFunction {
public:
    WaveFunction(Grid grid, Eigen::VectorXcd amps);

    const Grid& grid() const noexcept { return grid_; }
    const Eigen::VectorXcd& amps() const noexcept { return amps_; }
    std::span<const cplx> values() const noexcept { return {amps_.data(), static_cast<std::size_t>(amps_.size())}; }
    std::size_t size() const noexcept { return grid_.n_points(); }

private:
    Grid grid_;
    Eigen::VectorXcd amps_;
};

// Probability mass of the continuum Gaussian density (mean q0, std sigma)
// that falls outside (0, L).
double gaussian_tail_mass(const PhysicalParams& params, double length);

inline constexpr double kMaxTailMass = 1e-6;

// psi(x) ~ exp(i p0 (x - q0) / hbar) exp(-(x - q0)^2 / (4 sigma^2)), sampled and
// renormalized on the grid. Throws TailLeakError when the packet does not fit
// the box (analytic tail mass above kMaxTailMass).
WaveFunction gaussian_packet(const Grid& grid, const PhysicalParams& params);

// sum_i |psi_i|^2 dx
double norm2(const WaveFunction& wf);

// Rescales to unit norm2. A zero state is returned unchanged.
WaveFunction normalized(const WaveFunction& wf);

// |<a|b>|^2 with the dx-weighted inner product. Throws GridMismatchError.
double fidelity(const WaveFunction& a, const WaveFunction& b);

// <a|b> = sum_i conj(a_i) b_i dx. Throws GridMismatchError.
cplx inner(const WaveFunction& a, const WaveFunction& b);

struct PositionMoments {
    double mean = 0.0;
    double std = 0.0;
};

// Mean and standard deviation of x under the weights |v_i|^2 dx, normalized
// by their sum. v need not be normalized; a zero vector gives {0, 0}.
PositionMoments position_moments(std::span<const cplx> v, const Grid& grid);

}  // namespace boxqd
