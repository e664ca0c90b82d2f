#include "boxqd/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "boxqd/errors.hpp"
#include "boxqd/numeric.hpp"

namespace boxqd {
namespace {

// Fixed-order sum of f(i, j) over all entries: pairwise within each column,
// then pairwise over the column sums.
template <typename F>
double sum_entries(Eigen::Index n, F&& f) {
    std::vector<double> col(static_cast<std::size_t>(n));
    std::vector<double> totals(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = f(i, j);
        totals[static_cast<std::size_t>(j)] = pairwise_sum(col);
    }
    return pairwise_sum(totals);
}

}  // namespace

DensityMatrix::DensityMatrix(Grid grid, Eigen::MatrixXcd kernel) : grid_(std::move(grid)), kernel_(std::move(kernel)) {
    const auto n = static_cast<Eigen::Index>(grid_.n_points());
    if (kernel_.rows() != n || kernel_.cols() != n) {
        throw GridMismatchError("kernel is " + std::to_string(kernel_.rows()) + "x" + std::to_string(kernel_.cols()) +
                                ", grid has " + std::to_string(n) + " points");
    }
}

DensityMatrix pure_density(const WaveFunction& wf) {
    const Eigen::VectorXcd& psi = wf.amps();
    const Eigen::Index n = psi.size();
    Eigen::MatrixXcd k(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        k(j, j) = cplx(std::norm(psi[j]), 0.0);
        const cplx cj = std::conj(psi[j]);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            k(i, j) = psi[i] * cj;
            k(j, i) = std::conj(k(i, j));
        }
    }
    return DensityMatrix(wf.grid(), std::move(k));
}

double decoherence_factor(double dist, double d) {
    const double u = dist / d;
    return std::exp(-u * u);
}

DensityMatrix apply_decoherence(const DensityMatrix& rho, double d) {
    if (!(d > 0.0) || std::isnan(d)) throw ConfigError("d", "decoherence length must be positive");
    const Grid& g = rho.grid();
    const auto n = static_cast<Eigen::Index>(g.n_points());

    // Uniform lattice: the factor depends only on |i - j|.
    std::vector<double> factor(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        factor[static_cast<std::size_t>(k)] = decoherence_factor(static_cast<double>(k) * g.dx(), d);
    }

    const Eigen::MatrixXcd& in = rho.kernel();
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out(j, j) = in(j, j);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            out(i, j) = in(i, j) * factor[static_cast<std::size_t>(i - j)];
            out(j, i) = std::conj(out(i, j));
        }
    }
    return DensityMatrix(g, std::move(out));
}

double trace(const DensityMatrix& rho) {
    const Eigen::MatrixXcd& k = rho.kernel();
    std::vector<double> diag(static_cast<std::size_t>(k.rows()));
    for (Eigen::Index i = 0; i < k.rows(); ++i) diag[static_cast<std::size_t>(i)] = k(i, i).real();
    return pairwise_sum(diag) * rho.grid().dx();
}

double purity(const DensityMatrix& rho) {
    const Eigen::MatrixXcd& k = rho.kernel();
    const double dx = rho.grid().dx();
    return sum_entries(k.rows(), [&](Eigen::Index i, Eigen::Index j) { return std::norm(k(i, j)); }) * dx * dx;
}

double max_asymmetry(const DensityMatrix& rho) {
    const Eigen::MatrixXcd& k = rho.kernel();
    const double scale = k.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
        for (Eigen::Index i = j; i < k.rows(); ++i) {
            worst = std::max(worst, std::abs(k(i, j) - std::conj(k(j, i))));
        }
    }
    return worst / scale;
}

double off_block_mass(const DensityMatrix& rho, const BlockPartition& partition) {
    const std::size_t n = rho.grid().n_points();
    validate_partition(partition, n);
    std::vector<std::size_t> block(n);
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        for (std::size_t i = partition.blocks[b].begin; i < partition.blocks[b].end; ++i) block[i] = b;
    }
    const double total = purity(rho);
    if (total == 0.0) return 0.0;
    const Eigen::MatrixXcd& k = rho.kernel();
    const double dx = rho.grid().dx();
    const double off = sum_entries(k.rows(), [&](Eigen::Index i, Eigen::Index j) {
        return block[static_cast<std::size_t>(i)] == block[static_cast<std::size_t>(j)] ? 0.0 : std::norm(k(i, j));
    });
    return off * dx * dx / total;
}

}  // namespace boxqd
