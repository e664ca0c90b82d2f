#include "boxqd/partition.hpp"

#include <algorithm>
#include <string>

#include "boxqd/errors.hpp"

namespace boxqd {

std::size_t BlockPartition::block_of(std::size_t index) const {
    auto it = std::upper_bound(blocks.begin(), blocks.end(), index,
                               [](std::size_t i, const IndexRange& r) { return i < r.end; });
    if (it == blocks.end() || index < it->begin) {
        throw PartitionError("index " + std::to_string(index) + " is not covered by the partition");
    }
    return static_cast<std::size_t>(it - blocks.begin());
}

void validate_partition(const BlockPartition& partition, std::size_t n_points) {
    if (partition.blocks.empty()) throw PartitionError("partition has no blocks");
    std::size_t expect = 0;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        const IndexRange& r = partition.blocks[b];
        if (r.begin != expect) {
            throw PartitionError(std::string(r.begin > expect ? "gap" : "overlap") + " before block " +
                                 std::to_string(b) + " (begins at " + std::to_string(r.begin) +
                                 ", expected " + std::to_string(expect) + ")");
        }
        if (r.end <= r.begin) throw PartitionError("block " + std::to_string(b) + " is empty");
        expect = r.end;
    }
    if (expect != n_points) {
        throw PartitionError("partition covers " + std::to_string(expect) + " of " + std::to_string(n_points) +
                             " grid points");
    }
}

BlockPartition partition_at(std::vector<std::size_t> node_indices, std::vector<double> node_positions,
                            std::size_t n_points) {
    BlockPartition p;
    p.node_positions = std::move(node_positions);
    std::size_t begin = 0;
    for (std::size_t idx : node_indices) {
        if (idx <= begin || idx >= n_points) {
            throw PartitionError("node index " + std::to_string(idx) + " out of order or out of range");
        }
        p.blocks.push_back({begin, idx});
        begin = idx;
    }
    p.blocks.push_back({begin, n_points});
    return p;
}

}  // namespace boxqd
