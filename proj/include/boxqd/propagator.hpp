#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "boxqd/lattice.hpp"

namespace boxqd {

// Coefficients c_n, n = 1..N, over the box eigenmodes
// phi_n(x) = sqrt(2/L) sin(n pi x / L). coeffs[n - 1] holds c_n.
struct SpectralCoeffs {
    Grid grid;
    Eigen::VectorXcd coeffs;
};

// c_n = sum_i psi_i phi_n(x_i) dx, via a fast sine transform (DST-I).
SpectralCoeffs to_spectral(const WaveFunction& wf);

// psi_i = sum_n c_n phi_n(x_i). Exact inverse of to_spectral.
WaveFunction from_spectral(const SpectralCoeffs& sc);

// phi_n sampled on the grid (unit norm up to sampling error; exact for n <= N).
WaveFunction sine_mode(const Grid& grid, std::size_t n);

// E_n = n^2 pi^2 hbar^2 / (2 m L^2). Throws ConfigError for n outside 1..N.
double mode_energy(std::size_t n, const Grid& grid, const PhysicalParams& params);

// sum_n E_n |c_n|^2
double mean_energy(const SpectralCoeffs& sc, const PhysicalParams& params);

// Free evolution inside the box: c_n(t) = c_n(0) exp(-i E_n t / hbar).
// Exact for any t, including negative t.
WaveFunction evolve(const WaveFunction& wf, double t, const PhysicalParams& params);

// fidelity(wf0, evolve(evolve(wf0, t), -t))
double reversal_fidelity(const WaveFunction& wf0, double t, const PhysicalParams& params);

// 4 m L^2 / (pi hbar): every mode phase is a multiple of 2 pi.
double revival_time(double length, const PhysicalParams& params);

}  // namespace boxqd
