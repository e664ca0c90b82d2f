#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "boxqd/decoherence.hpp"
#include "boxqd/lattice.hpp"

namespace boxqd {

// Eigenpairs of the weighted matrix A = rho * dx.
//
// eigenvalues are sorted descending. Runs of eigenvalues closer than
// kDegeneracyTol * |lambda_1| are ordered by ascending <x> of the eigenvector.
// Column k of eigenvectors is continuum-normalized (sum_i |v_ki|^2 dx = 1) and
// its largest-magnitude component is real and positive.
struct EigenDecomposition {
    Grid grid;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
    std::span<const cplx> vector(std::size_t k) const {
        return {eigenvectors.col(static_cast<Eigen::Index>(k)).data(), grid.n_points()};
    }
};

inline constexpr double kDegeneracyTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

// Full Hermitian eigendecomposition. Throws NonHermitianError when
// max_asymmetry(rho) >= kHermitianTol, NoConvergenceError if the iteration
// does not converge.
EigenDecomposition eigh(const DensityMatrix& rho);

// (sum lambda)^2 / sum lambda^2. Throws Error for an all-zero spectrum.
double effective_rank(const EigenDecomposition& eig);

// max_k ||A v_k - lambda_k v_k|| / ||A||_F with unit-2-norm v_k.
double max_residual(const DensityMatrix& rho, const EigenDecomposition& eig);

// max_jk |<v_j, v_k> dx - delta_jk|
double orthonormality_defect(const EigenDecomposition& eig);

// sum_k lambda_k v_k(x_i) conj(v_k(x_j)), the kernel rebuilt from the
// decomposition (continuum-normalized v_k, so no dx factor).
Eigen::MatrixXcd reconstruct_kernel(const EigenDecomposition& eig);

}  // namespace boxqd
