#pragma once

#include <cstddef>
#include <vector>

namespace boxqd {

// Half-open index range [begin, end) of grid points.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
    bool operator==(const IndexRange&) const = default;
};

// Blocks of consecutive grid indices cut at near-zero minima of |psi|^2.
// Interior block boundaries sit at the grid index of a detected node; the
// node sample opens the block to its right.
struct BlockPartition {
    std::vector<double> node_positions;  // refined positions, ascending
    std::vector<IndexRange> blocks;

    std::size_t block_of(std::size_t index) const;
};

// Throws PartitionError unless blocks are non-empty, ordered, disjoint and
// cover [0, n_points) exactly.
void validate_partition(const BlockPartition& partition, std::size_t n_points);

// Builds the partition whose interior boundaries are the given node indices.
BlockPartition partition_at(std::vector<std::size_t> node_indices, std::vector<double> node_positions,
                            std::size_t n_points);

}  // namespace boxqd
