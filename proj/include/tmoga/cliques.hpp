#pragma once

#include <vector>

#include "tmoga/graph.hpp"
#include "tmoga/partition.hpp"

namespace tmoga {

/// Node-disjoint dense subgraphs extracted from a partition's communities.
/// Each set either has size >= 3 with internal density at or above the
/// extraction threshold and size <= the depth limit, or is an entire
/// community returned whole by the density short-circuit.
struct CliqueSet {
    std::vector<std::vector<int>> cliques;  // sorted node lists
    int source_snapshot = -1;               // time index the features came from

    bool empty() const { return cliques.empty(); }
    std::size_t size() const { return cliques.size(); }
};

/// Backtracking clique discovery inside one community, with greedy density
/// pruning, ascending-index search and a size cap. Communities of size <= 2
/// yield nothing; a community whose own density clears the threshold is
/// returned whole.
CliqueSet extract_cliques(const Snapshot& snapshot, const std::vector<int>& community,
                          double cid_threshold, int max_depth);

/// Union of per-community extractions over the whole partition.
CliqueSet extract_all(const Snapshot& snapshot, const Partition& partition,
                      double cid_threshold, int max_depth, int source_snapshot = -1);

/// Debug dump: one clique per line as sorted node ids.
void dump_cliques(const CliqueSet& cliques, const NodeRegistry& registry, std::ostream& out);

}  // namespace tmoga
