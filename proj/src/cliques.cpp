#include "tmoga/cliques.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "tmoga/metrics.hpp"

namespace tmoga {

namespace {

// Per-community search state. `member` and `searched` are indexed by node;
// `searched` is reset between communities.
struct CommunitySearch {
    const Snapshot& snapshot;
    const std::vector<char>& member;
    const std::vector<char>& searched;
    double threshold;
    int max_size;

    // Neighbors of `node` inside the community, unsearched, with index
    // greater than `node`, ascending.
    std::vector<int> forward_neighbors(int node) const {
        std::vector<int> result;
        for (int v : snapshot.neighbors(node)) {
            if (v > node && member[static_cast<std::size_t>(v)] && !searched[static_cast<std::size_t>(v)]) {
                result.push_back(v);
            }
        }
        return result;
    }

    // Depth-first growth: tries each candidate in ascending order, prunes
    // branches whose density falls below the threshold, returns as soon as
    // the size cap is reached, otherwise keeps the largest subgraph that
    // ends with at least 3 nodes.
    std::vector<int> grow(const std::vector<int>& subgraph, std::vector<int> candidate) const {
        std::vector<int> best = subgraph;
        while (!candidate.empty()) {
            const int node = candidate.front();
            candidate.erase(candidate.begin());

            std::vector<int> next_candidate = candidate;
            for (int v : forward_neighbors(node)) {
                auto pos = std::lower_bound(next_candidate.begin(), next_candidate.end(), v);
                if (pos == next_candidate.end() || *pos != v) next_candidate.insert(pos, v);
            }

            std::vector<int> next_subgraph = subgraph;
            next_subgraph.insert(std::lower_bound(next_subgraph.begin(), next_subgraph.end(), node), node);

            if (cid(snapshot, next_subgraph) >= threshold) {
                if (static_cast<int>(next_subgraph.size()) >= max_size) return next_subgraph;
                std::vector<int> result = grow(next_subgraph, std::move(next_candidate));
                if (result.size() > best.size()) best = std::move(result);
            }
        }
        if (best.size() >= 3) return best;
        return {};
    }
};

}  // namespace

CliqueSet extract_cliques(const Snapshot& snapshot, const std::vector<int>& community,
                          double cid_threshold, int max_depth) {
    if (cid_threshold < 0.0 || cid_threshold > 1.0) throw std::invalid_argument("cid_threshold outside [0, 1]");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");

    CliqueSet result;
    if (community.size() <= 2) return result;

    std::vector<int> sorted = community;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    if (cid(snapshot, sorted) >= cid_threshold) {
        result.cliques.push_back(std::move(sorted));
        return result;
    }

    std::vector<char> member(static_cast<std::size_t>(snapshot.node_count()), 0);
    for (int u : sorted) member[static_cast<std::size_t>(u)] = 1;
    std::vector<char> searched(static_cast<std::size_t>(snapshot.node_count()), 0);
    CommunitySearch search{snapshot, member, searched, cid_threshold, max_depth};

    for (int node : sorted) {
        if (searched[static_cast<std::size_t>(node)]) continue;
        std::vector<int> clique = search.grow({node}, search.forward_neighbors(node));
        // Only subgraphs of at least 3 nodes qualify as features.
        if (clique.size() >= 3) {
            for (int u : clique) searched[static_cast<std::size_t>(u)] = 1;
            result.cliques.push_back(std::move(clique));
        }
    }
    return result;
}

CliqueSet extract_all(const Snapshot& snapshot, const Partition& partition,
                      double cid_threshold, int max_depth, int source_snapshot) {
    if (partition.node_count() != snapshot.node_count()) {
        throw std::invalid_argument("partition does not cover the snapshot");
    }
    CliqueSet all;
    all.source_snapshot = source_snapshot;
    for (const auto& community : partition.communities()) {
        CliqueSet local = extract_cliques(snapshot, community, cid_threshold, max_depth);
        for (auto& clique : local.cliques) all.cliques.push_back(std::move(clique));
    }
    return all;
}

void dump_cliques(const CliqueSet& cliques, const NodeRegistry& registry, std::ostream& out) {
    for (const auto& clique : cliques.cliques) {
        for (std::size_t i = 0; i < clique.size(); ++i) {
            if (i > 0) out << ' ';
            out << registry.name(clique[i]);
        }
        out << '\n';
    }
}

}  // namespace tmoga
