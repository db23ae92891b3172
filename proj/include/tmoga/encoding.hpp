#pragma once

#include <vector>

#include "tmoga/graph.hpp"
#include "tmoga/partition.hpp"
#include "tmoga/rng.hpp"

namespace tmoga {

/// Direct encoding: one community tag per node.
using LabelVector = std::vector<int>;

/// Locus-based adjacency genotype: gene[u] names a neighbor of u (or u
/// itself); the connected components of u -> gene[u] are the communities.
struct LocusGenotype {
    std::vector<int> genes;

    int size() const { return static_cast<int>(genes.size()); }

    bool operator==(const LocusGenotype& other) const { return genes == other.genes; }
};

/// True iff every gene is the node itself or one of its neighbors.
bool is_valid_genotype(const Snapshot& snapshot, const LocusGenotype& genotype);

/// Components of the gene graph, via union-find. Throws
/// std::invalid_argument on a gene that is neither self nor neighbor.
Partition decode(const Snapshot& snapshot, const LocusGenotype& genotype);

/// Inverse of decode up to connectivity: gene[u] is a uniformly chosen
/// neighbor sharing u's label, or u when none exists. A community that is
/// disconnected in the snapshot decodes back as its connected parts.
LocusGenotype encode(const Snapshot& snapshot, const Partition& partition, Rng& rng);

/// Synchronous label propagation: every sweep recomputes all labels from
/// the previous vector; a node takes the most frequent label among its
/// neighbors, keeps its own label when it ties for the maximum, and
/// otherwise breaks ties toward the smallest label. Isolated nodes keep
/// their label.
LabelVector label_propagation(const Snapshot& snapshot, LabelVector labels, int iterations);

/// Every gene uniform over adj(u) plus u itself.
LocusGenotype random_genotype(const Snapshot& snapshot, Rng& rng);

/// Label-propagation initialization: a random unique label per node,
/// `iterations` sweeps, then encoded to locus form.
LocusGenotype label_propagation_genotype(const Snapshot& snapshot, Rng& rng, int iterations = 5);

}  // namespace tmoga
