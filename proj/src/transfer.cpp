#include "tmoga/transfer.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmoga {

CandidateMap build_candidates(const Snapshot& snapshot, const CliqueSet& cliques) {
    CandidateMap map;
    for (const auto& clique : cliques.cliques) {
        std::vector<char> in_clique(static_cast<std::size_t>(snapshot.node_count()), 0);
        for (int u : clique) {
            if (u < 0 || u >= snapshot.node_count()) throw std::out_of_range("clique node outside snapshot");
            in_clique[static_cast<std::size_t>(u)] = 1;
        }
        for (int u : clique) {
            CandidateMap::Entry entry;
            entry.node = u;
            for (int v : snapshot.neighbors(u)) {
                if (in_clique[static_cast<std::size_t>(v)]) entry.candidates.push_back(v);
            }
            map.entries.push_back(std::move(entry));
        }
    }
    std::sort(map.entries.begin(), map.entries.end(),
              [](const auto& a, const auto& b) { return a.node < b.node; });
    return map;
}

std::vector<LocusGenotype> migrate_population(const Snapshot& snapshot, const CliqueSet& cliques,
                                              double tp, int population_size, Rng& rng,
                                              int lp_iterations, bool repair) {
    if (tp < 0.0 || tp > 1.0) throw std::invalid_argument("tp outside [0, 1]");
    if (population_size < 1) throw std::invalid_argument("population_size must be >= 1");

    const CandidateMap map = build_candidates(snapshot, cliques);

    std::vector<LocusGenotype> population;
    population.reserve(static_cast<std::size_t>(population_size));
    for (int i = 0; i < population_size; ++i) {
        LocusGenotype genotype = random_genotype(snapshot, rng);
        for (const auto& entry : map.entries) {
            if (rng.uniform01() <= tp && !entry.candidates.empty()) {
                genotype.genes[static_cast<std::size_t>(entry.node)] = rng.pick(entry.candidates);
            }
        }
        if (repair) {
            LabelVector labels = label_propagation(snapshot, decode(snapshot, genotype).labels(), lp_iterations);
            genotype = encode(snapshot, Partition(labels), rng);
        }
        population.push_back(std::move(genotype));
    }
    return population;
}

}  // namespace tmoga
