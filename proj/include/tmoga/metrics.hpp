#pragma once

#include <span>
#include <vector>

#include "tmoga/graph.hpp"
#include "tmoga/partition.hpp"

namespace tmoga {

/// Shared-node counts between the communities of two partitions.
struct ConfusionMatrix {
    std::vector<std::vector<std::int64_t>> counts;  // [community of a][community of b]
    std::vector<std::int64_t> row_sums;             // community sizes of a
    std::vector<std::int64_t> col_sums;             // community sizes of b
};

ConfusionMatrix confusion(const Partition& a, const Partition& b);

/// Newman modularity Q = sum_i [ l_i/|E| - (d_i/(2|E|))^2 ], range [-1/2, 1].
/// Throws std::domain_error on an edgeless snapshot.
double modularity(const Snapshot& snapshot, const Partition& partition);

/// Normalized mutual information between two partitions of the same node
/// set, in [0, 1]; 1 iff the partitions are identical (including the
/// degenerate case of two single-community partitions).
double nmi(const Partition& a, const Partition& b);

/// Community Score of order 2: sum_i [ (sum_m mu_m^2)/|C_i| * sum_{m,n in C_i} A_mn ]
/// with mu_m the mean adjacency row of m over C_i. The pair sum runs over
/// ordered pairs, i.e. contributes twice the internal edge count.
double community_score(const Snapshot& snapshot, const Partition& partition);

/// Internal density 2 L(S) / (|S| (|S|-1)) of a node set, in [0, 1].
/// Throws std::domain_error when the set has fewer than 2 distinct nodes.
double cid(const Snapshot& snapshot, std::span<const int> nodes);

}  // namespace tmoga
