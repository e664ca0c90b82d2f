#pragma once

#include <Eigen/Dense>

#include "boxqd/lattice.hpp"
#include "boxqd/partition.hpp"

namespace boxqd {

// Samples rho(x_i, x_j) of a continuum density kernel. Operator-level
// quantities (trace, purity, spectrum) use the weighted matrix A = rho * dx.
class DensityMatrix {
public:
    DensityMatrix(Grid grid, Eigen::MatrixXcd kernel);

    const Grid& grid() const noexcept { return grid_; }
    const Eigen::MatrixXcd& kernel() const noexcept { return kernel_; }
    Eigen::MatrixXcd weighted() const { return kernel_ * grid_.dx(); }

private:
    Grid grid_;
    Eigen::MatrixXcd kernel_;
};

// rho_ij = psi_i conj(psi_j). Lower triangle computed, upper mirrored by
// conjugation, diagonal stored as |psi_i|^2 with zero imaginary part.
DensityMatrix pure_density(const WaveFunction& wf);

// Gaussian suppression of coherence between two points separated by dist.
double decoherence_factor(double dist, double d);

// rho'_ij = rho_ij exp(-(x_i - x_j)^2 / d^2). The diagonal is copied, not
// multiplied. Throws ConfigError for d <= 0.
DensityMatrix apply_decoherence(const DensityMatrix& rho, double d);

// sum_i rho_ii dx
double trace(const DensityMatrix& rho);

// sum_ij |rho_ij|^2 dx^2 = tr(A^2)
double purity(const DensityMatrix& rho);

// max_ij |rho_ij - conj(rho_ji)| / max_ij |rho_ij| (0 for the zero matrix).
double max_asymmetry(const DensityMatrix& rho);

// Hilbert-Schmidt weight of rho outside the block diagonal, relative to
// purity(rho). Throws PartitionError for an invalid partition.
double off_block_mass(const DensityMatrix& rho, const BlockPartition& partition);

}  // namespace boxqd
