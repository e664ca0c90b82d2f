#include "boxqd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "boxqd/errors.hpp"
#include "boxqd/numeric.hpp"

namespace boxqd {

std::vector<double> density_profile(const WaveFunction& wf) {
    std::vector<double> p(wf.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(wf.values()[i]);
    return p;
}

BlockPartition find_nodes(std::span<const double> profile, const Grid& grid, double rel_threshold) {
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) {
        throw ConfigError("rel_threshold", "must lie in (0, 1)");
    }
    const std::size_t n = profile.size();
    if (n != grid.n_points()) throw GridMismatchError("profile length does not match the grid");

    const double cut = rel_threshold * *std::max_element(profile.begin(), profile.end());
    std::vector<std::size_t> idx;
    std::vector<double> pos;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double l = profile[i - 1], c = profile[i], r = profile[i + 1];
        if (!(c < l && c < r && c < cut)) continue;
        const double curv = l - 2.0 * c + r;
        const double shift = curv > 0.0 ? 0.5 * (l - r) / curv : 0.0;
        idx.push_back(i);
        pos.push_back(grid.x(i) + shift * grid.dx());
    }
    return partition_at(std::move(idx), std::move(pos), n);
}

double eigenstate_width(std::span<const cplx> v, const Grid& grid) {
    return position_moments(v, grid).std;
}

double ipr_length(std::span<const cplx> v, const Grid& grid) {
    std::vector<double> w4(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::norm(v[i]);
        w4[i] = a * a;
    }
    return 1.0 / (pairwise_sum(w4) * grid.dx());
}

double max_block_fraction(std::span<const cplx> v, const BlockPartition& partition) {
    validate_partition(partition, v.size());
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::norm(v[i]);
    const double total = pairwise_sum(w);
    if (total == 0.0) return 0.0;
    double best = 0.0;
    for (const IndexRange& b : partition.blocks) {
        best = std::max(best, pairwise_sum(std::span<const double>(w).subspan(b.begin, b.size())));
    }
    return best / total;
}

double de_broglie_wavelength(const PhysicalParams& params) {
    return 2.0 * std::numbers::pi * params.hbar / std::abs(params.p0);
}

LocalizationReport localization_report(const EigenDecomposition& eig, const WaveFunction& wf,
                                       const PhysicalParams& params, double d, double weight_cutoff,
                                       double rel_threshold) {
    if (!(weight_cutoff > 0.0 && weight_cutoff <= 1.0)) {
        throw ConfigError("weight_cutoff", "must lie in (0, 1]");
    }
    const Grid& g = eig.grid;
    const std::size_t n = eig.size();

    LocalizationReport rep;
    rep.partition = find_nodes(density_profile(wf), g, rel_threshold);

    LocalizationSummary& s = rep.summary;
    s.lambda_db = de_broglie_wavelength(params);
    s.d = d;
    s.effective_rank = effective_rank(eig);
    s.node_count = rep.partition.node_positions.size();
    if (s.node_count >= 2) {
        const auto& nodes = rep.partition.node_positions;
        s.mean_node_spacing = (nodes.back() - nodes.front()) / static_cast<double>(s.node_count - 1);
    } else {
        s.mean_node_spacing = std::numeric_limits<double>::quiet_NaN();
    }

    // Tiny negative eigenvalues are rounding noise; they carry no weight.
    std::vector<double> weight(n), below(n);
    for (std::size_t k = 0; k < n; ++k) {
        weight[k] = std::max(0.0, eig.eigenvalues[static_cast<Eigen::Index>(k)]);
        below[k] = eigenstate_width(eig.vector(k), g) < s.lambda_db ? weight[k] : 0.0;
    }
    const double total = pairwise_sum(weight);
    s.weight_fraction_below = total > 0.0 ? std::clamp(pairwise_sum(below) / total, 0.0, 1.0) : 0.0;

    double acc = 0.0;
    for (std::size_t k = 0; k < n && (rep.rows.empty() || acc < weight_cutoff * total); ++k) {
        const auto v = eig.vector(k);
        const PositionMoments m = position_moments(v, g);
        rep.rows.push_back({k, eig.eigenvalues[static_cast<Eigen::Index>(k)], m.mean, m.std, ipr_length(v, g),
                            max_block_fraction(v, rep.partition)});
        acc += weight[k];
    }
    s.captured_weight = total > 0.0 ? std::min(1.0, acc / total) : 0.0;

    std::vector<std::size_t> by_width(rep.rows.size());
    std::iota(by_width.begin(), by_width.end(), std::size_t{0});
    std::stable_sort(by_width.begin(), by_width.end(),
                     [&](std::size_t a, std::size_t b) { return rep.rows[a].width_std < rep.rows[b].width_std; });
    double cum = 0.0;
    for (std::size_t r : by_width) {
        cum += weight[rep.rows[r].index];
        s.weighted_median_width = rep.rows[r].width_std;
        if (cum >= 0.5 * acc) break;
    }
    return rep;
}

}  // namespace boxqd
