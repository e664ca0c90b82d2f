#include "boxqd/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "boxqd/errors.hpp"
#include "boxqd/numeric.hpp"

namespace boxqd {
namespace {

// Rotate the column so that its largest-magnitude entry (first one on ties)
// is real and positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (best_abs > 0.0) v *= std::conj(v[best]) / best_abs;
}

}  // namespace

EigenDecomposition eigh(const DensityMatrix& rho) {
    const double asym = max_asymmetry(rho);
    if (!(asym < kHermitianTol)) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (relative asymmetry " << asym << ")";
        throw NonHermitianError(msg.str());
    }

    const Grid& g = rho.grid();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.weighted(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NoConvergenceError("Hermitian eigensolver did not converge");
    }

    const Eigen::Index n = solver.eigenvalues().size();
    const Eigen::VectorXd& vals = solver.eigenvalues();
    Eigen::MatrixXcd vecs = solver.eigenvectors() / std::sqrt(g.dx());

    std::vector<double> mean_x(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        fix_phase(vecs.col(k));
        mean_x[static_cast<std::size_t>(k)] =
            position_moments({vecs.col(k).data(), static_cast<std::size_t>(n)}, g).mean;
    }

    // Solver order is ascending; walk it backwards, then order each
    // near-degenerate run by <x>.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.rbegin(), order.rend(), Eigen::Index{0});
    const double tol = kDegeneracyTol * std::max(std::abs(vals[n - 1]), std::abs(vals[0]));
    for (std::size_t start = 0; start < order.size();) {
        std::size_t stop = start + 1;
        while (stop < order.size() && vals[order[stop - 1]] - vals[order[stop]] < tol) ++stop;
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(stop),
                         [&](Eigen::Index a, Eigen::Index b) {
                             return mean_x[static_cast<std::size_t>(a)] < mean_x[static_cast<std::size_t>(b)];
                         });
        start = stop;
    }

    EigenDecomposition out{g, Eigen::VectorXd(n), Eigen::MatrixXcd(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues[k] = vals[src];
        out.eigenvectors.col(k) = vecs.col(src);
    }
    return out;
}

double effective_rank(const EigenDecomposition& eig) {
    std::vector<double> l(eig.size()), l2(eig.size());
    for (std::size_t k = 0; k < eig.size(); ++k) {
        l[k] = eig.eigenvalues[static_cast<Eigen::Index>(k)];
        l2[k] = l[k] * l[k];
    }
    const double s = pairwise_sum(l);
    const double s2 = pairwise_sum(l2);
    if (!(s > 0.0) || s2 == 0.0) throw Error("effective_rank: spectrum sums to zero");
    return s * s / s2;
}

double max_residual(const DensityMatrix& rho, const EigenDecomposition& eig) {
    const Eigen::MatrixXcd a = rho.weighted();
    const double a_norm = a.norm();
    if (a_norm == 0.0) return 0.0;
    const double sqrt_dx = std::sqrt(eig.grid.dx());
    const Eigen::MatrixXcd v = eig.eigenvectors * sqrt_dx;
    const Eigen::MatrixXcd r = a * v - v * eig.eigenvalues.asDiagonal();
    return r.colwise().norm().maxCoeff() / a_norm;
}

double orthonormality_defect(const EigenDecomposition& eig) {
    const Eigen::MatrixXcd gram = eig.eigenvectors.adjoint() * eig.eigenvectors * eig.grid.dx();
    const auto n = gram.rows();
    return (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd reconstruct_kernel(const EigenDecomposition& eig) {
    return eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace boxqd
