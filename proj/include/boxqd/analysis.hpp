#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "boxqd/lattice.hpp"
#include "boxqd/partition.hpp"
#include "boxqd/spectra.hpp"

namespace boxqd {

inline constexpr double kDefaultRelThreshold = 0.02;
inline constexpr double kDefaultWeightCutoff = 0.9;

// |psi(x_i)|^2
std::vector<double> density_profile(const WaveFunction& wf);

// Nodes are strict interior local minima below rel_threshold * max(profile).
// Positions are refined by a parabola through the minimum and its two
// neighbours. Throws ConfigError unless 0 < rel_threshold < 1.
BlockPartition find_nodes(std::span<const double> profile, const Grid& grid, double rel_threshold);

// Standard deviation of x under |v|^2 dx.
double eigenstate_width(std::span<const cplx> v, const Grid& grid);

// 1 / sum_i |v_i|^4 dx for a continuum-normalized v.
double ipr_length(std::span<const cplx> v, const Grid& grid);

// Largest fraction of the mass of v contained in one block of the partition.
double max_block_fraction(std::span<const cplx> v, const BlockPartition& partition);

// 2 pi hbar / p0
double de_broglie_wavelength(const PhysicalParams& params);

struct EigenstateRow {
    std::size_t index = 0;
    double eigenvalue = 0.0;
    double mean_x = 0.0;
    double width_std = 0.0;
    double ipr_length = 0.0;
    double block_fraction = 0.0;  // max_block_fraction against the node partition of wf
};

struct LocalizationSummary {
    double lambda_db = 0.0;
    double d = 0.0;
    double effective_rank = 0.0;
    // sum of lambda_k over all eigenstates with width_std < lambda_db, over sum lambda
    double weight_fraction_below = 0.0;
    // width at which the rows' cumulative eigenvalue weight first reaches half
    double weighted_median_width = 0.0;
    double captured_weight = 0.0;  // sum of row eigenvalues over sum lambda
    std::size_t node_count = 0;
    double mean_node_spacing = 0.0;  // NaN with fewer than two nodes
};

struct LocalizationReport {
    std::vector<EigenstateRow> rows;
    LocalizationSummary summary;
    BlockPartition partition;
};

// Rows cover the leading eigenstates whose eigenvalues first reach
// weight_cutoff of the trace. The partition comes from the nodes of |wf|^2.
// Throws ConfigError unless 0 < weight_cutoff <= 1.
LocalizationReport localization_report(const EigenDecomposition& eig, const WaveFunction& wf,
                                       const PhysicalParams& params, double d, double weight_cutoff,
                                       double rel_threshold = kDefaultRelThreshold);

}  // namespace boxqd
