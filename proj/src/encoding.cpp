#include "tmoga/encoding.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tmoga/disjoint_set.hpp"

namespace tmoga {

bool is_valid_genotype(const Snapshot& snapshot, const LocusGenotype& genotype) {
    if (genotype.size() != snapshot.node_count()) return false;
    for (int u = 0; u < genotype.size(); ++u) {
        const int g = genotype.genes[static_cast<std::size_t>(u)];
        if (g != u && !(g >= 0 && g < snapshot.node_count() && snapshot.has_edge(u, g))) return false;
    }
    return true;
}

Partition decode(const Snapshot& snapshot, const LocusGenotype& genotype) {
    if (genotype.size() != snapshot.node_count()) throw std::invalid_argument("genotype length mismatch");
    DisjointSet components(snapshot.node_count());
    for (int u = 0; u < genotype.size(); ++u) {
        const int g = genotype.genes[static_cast<std::size_t>(u)];
        if (g == u) continue;
        if (g < 0 || g >= snapshot.node_count() || !snapshot.has_edge(u, g)) {
            throw std::invalid_argument("invalid gene: node " + std::to_string(u) + " -> " + std::to_string(g));
        }
        components.unite(u, g);
    }
    std::vector<int> labels(static_cast<std::size_t>(snapshot.node_count()));
    for (int u = 0; u < snapshot.node_count(); ++u) labels[static_cast<std::size_t>(u)] = components.find(u);
    return Partition(labels);
}

LocusGenotype encode(const Snapshot& snapshot, const Partition& partition, Rng& rng) {
    if (partition.node_count() != snapshot.node_count()) {
        throw std::invalid_argument("partition does not cover the snapshot");
    }
    const int n = snapshot.node_count();
    LocusGenotype genotype;
    genotype.genes.resize(static_cast<std::size_t>(n));

    // Randomized spanning tree per connected same-label component: tree
    // parents keep each component in one gene component, so decoding only
    // refines communities that were disconnected to begin with.
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<int> same_label;
    for (int root = 0; root < n; ++root) {
        if (visited[static_cast<std::size_t>(root)]) continue;
        visited[static_cast<std::size_t>(root)] = 1;

        same_label.clear();
        for (int v : snapshot.neighbors(root)) {
            if (partition.label_of(v) == partition.label_of(root)) same_label.push_back(v);
        }
        genotype.genes[static_cast<std::size_t>(root)] = same_label.empty() ? root : rng.pick(same_label);

        stack.assign(1, root);
        while (!stack.empty()) {
            const int u = stack[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(stack.size()) - 1))];
            same_label.clear();
            for (int v : snapshot.neighbors(u)) {
                if (!visited[static_cast<std::size_t>(v)] && partition.label_of(v) == partition.label_of(u)) {
                    same_label.push_back(v);
                }
            }
            if (same_label.empty()) {
                std::swap(stack[stack.size() - 1],
                          *std::find(stack.begin(), stack.end(), u));
                stack.pop_back();
                continue;
            }
            const int child = rng.pick(same_label);
            visited[static_cast<std::size_t>(child)] = 1;
            genotype.genes[static_cast<std::size_t>(child)] = u;
            stack.push_back(child);
        }
    }
    return genotype;
}

LabelVector label_propagation(const Snapshot& snapshot, LabelVector labels, int iterations) {
    if (static_cast<int>(labels.size()) != snapshot.node_count()) {
        throw std::invalid_argument("label vector length mismatch");
    }
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    if (iterations == 0 || labels.empty()) return labels;

    // Remap labels to dense ranks; ranks preserve label order, so the
    // smallest-label tie rule carries over.
    std::vector<int> unique = labels;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    auto rank_of = [&](int label) {
        return static_cast<int>(std::lower_bound(unique.begin(), unique.end(), label) - unique.begin());
    };

    LabelVector dense(labels.size());
    for (std::size_t u = 0; u < labels.size(); ++u) dense[u] = rank_of(labels[u]);

    LabelVector next(dense.size());
    std::vector<int> counts(unique.size(), 0);
    std::vector<int> touched;
    touched.reserve(32);
    for (int iter = 0; iter < iterations; ++iter) {
        for (int u = 0; u < snapshot.node_count(); ++u) {
            const auto nbrs = snapshot.neighbors(u);
            if (nbrs.empty()) {
                next[static_cast<std::size_t>(u)] = dense[static_cast<std::size_t>(u)];
                continue;
            }
            touched.clear();
            int best = 0;
            for (int v : nbrs) {
                const int label = dense[static_cast<std::size_t>(v)];
                if (counts[static_cast<std::size_t>(label)]++ == 0) touched.push_back(label);
                best = std::max(best, counts[static_cast<std::size_t>(label)]);
            }
            const int own = dense[static_cast<std::size_t>(u)];
            int chosen;
            if (own < static_cast<int>(counts.size()) && counts[static_cast<std::size_t>(own)] == best) {
                chosen = own;
            } else {
                chosen = std::numeric_limits<int>::max();
                for (int label : touched) {
                    if (counts[static_cast<std::size_t>(label)] == best) chosen = std::min(chosen, label);
                }
            }
            next[static_cast<std::size_t>(u)] = chosen;
            for (int label : touched) counts[static_cast<std::size_t>(label)] = 0;
        }
        dense.swap(next);
    }
    for (std::size_t u = 0; u < dense.size(); ++u) {
        labels[u] = unique[static_cast<std::size_t>(dense[u])];
    }
    return labels;
}

LocusGenotype random_genotype(const Snapshot& snapshot, Rng& rng) {
    LocusGenotype genotype;
    genotype.genes.resize(static_cast<std::size_t>(snapshot.node_count()));
    for (int u = 0; u < snapshot.node_count(); ++u) {
        const auto nbrs = snapshot.neighbors(u);
        const int slot = rng.uniform_int(0, static_cast<int>(nbrs.size()));
        genotype.genes[static_cast<std::size_t>(u)] = slot == 0 ? u : nbrs[static_cast<std::size_t>(slot - 1)];
    }
    return genotype;
}

LocusGenotype label_propagation_genotype(const Snapshot& snapshot, Rng& rng, int iterations) {
    LabelVector labels(static_cast<std::size_t>(snapshot.node_count()));
    std::iota(labels.begin(), labels.end(), 0);
    rng.shuffle(labels);
    labels = label_propagation(snapshot, std::move(labels), iterations);
    return encode(snapshot, Partition(labels), rng);
}

}  // namespace tmoga
