#pragma once

#include <vector>

#include "tmoga/cliques.hpp"
#include "tmoga/encoding.hpp"
#include "tmoga/graph.hpp"
#include "tmoga/rng.hpp"

namespace tmoga {

/// Per clique-node candidate genes: the node's neighbors in the current
/// snapshot that belong to the same clique. Entries are kept in ascending
/// node order so migration draws are reproducible; nodes whose clique
/// neighborhood vanished keep an empty list and are skipped.
struct CandidateMap {
    struct Entry {
        int node;
        std::vector<int> candidates;
    };
    std::vector<Entry> entries;
};

CandidateMap build_candidates(const Snapshot& snapshot, const CliqueSet& cliques);

/// Seeds an initial population from transferred features: each individual
/// starts as a fresh random genotype, each clique node's gene is rewritten
/// with probability `tp` to a uniformly chosen candidate, and the result
/// is repaired by `lp_iterations` label-propagation sweeps (decode,
/// propagate, re-encode). With `repair` off the raw seeded genotypes are
/// returned, which is the naive transfer variant.
std::vector<LocusGenotype> migrate_population(const Snapshot& snapshot, const CliqueSet& cliques,
                                              double tp, int population_size, Rng& rng,
                                              int lp_iterations = 5, bool repair = true);

}  // namespace tmoga
