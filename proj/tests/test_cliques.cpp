#include <doctest.h>

#include <algorithm>
#include <set>

#include "tmoga/cliques.hpp"
#include "tmoga/metrics.hpp"
#include "oracles.hpp"

using namespace tmoga;

namespace {

const std::vector<std::pair<int, int>> kBarbell = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};

bool disjoint(const CliqueSet& cliques) {
    std::set<int> seen;
    for (const auto& clique : cliques.cliques) {
        for (int u : clique) {
            if (!seen.insert(u).second) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("tiny communities yield no features") {
    const Snapshot s = Snapshot::from_edges(3, {{0, 1}});
    CHECK(extract_cliques(s, {0, 1}, 0.5, 5).empty());
    CHECK(extract_cliques(s, {2}, 0.5, 5).empty());
}

TEST_CASE("dense community short-circuits whole") {
    std::vector<std::pair<int, int>> k4;
    for (int u = 0; u < 4; ++u) {
        for (int v = u + 1; v < 4; ++v) k4.emplace_back(u, v);
    }
    const Snapshot s = Snapshot::from_edges(4, k4);
    const CliqueSet cliques = extract_cliques(s, {0, 1, 2, 3}, 0.8, 5);
    REQUIRE(cliques.size() == 1);
    CHECK(cliques.cliques[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("barbell splits into its two triangles at threshold 1") {
    const Snapshot s = Snapshot::from_edges(6, kBarbell);
    const CliqueSet cliques = extract_cliques(s, {0, 1, 2, 3, 4, 5}, 1.0, 5);
    REQUIRE(cliques.size() == 2);
    CHECK(cliques.cliques[0] == std::vector<int>{0, 1, 2});
    CHECK(cliques.cliques[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("threshold 0 returns every community of size >= 3 whole") {
    Rng rng(5);
    const int n = 12;
    const Snapshot s = Snapshot::from_edges(n, oracle::random_edges(rng, n, 0.3));
    const Partition p({0, 0, 0, 0, 1, 1, 1, 2, 2, 3, 3, 3});
    const CliqueSet cliques = extract_all(s, p, 0.0, 5);
    // communities of size 4, 3, 3 qualify; the pair does not
    REQUIRE(cliques.size() == 3);
    CHECK(cliques.cliques[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(cliques.cliques[1] == std::vector<int>{4, 5, 6});
    CHECK(cliques.cliques[2] == std::vector<int>{9, 10, 11});
}

TEST_CASE("all-singleton partition yields nothing") {
    const Snapshot s = Snapshot::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(extract_all(s, Partition({0, 1, 2, 3}), 0.8, 5).empty());
}

TEST_CASE("two-triangle partition returns both whole") {
    const Snapshot s = Snapshot::from_edges(6, kBarbell);
    const CliqueSet cliques = extract_all(s, Partition({0, 0, 0, 1, 1, 1}), 0.8, 5);
    REQUIRE(cliques.size() == 2);
    CHECK(cliques.cliques[0] == std::vector<int>{0, 1, 2});
    CHECK(cliques.cliques[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("extraction output satisfies every feature-set invariant") {
    Rng rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = rng.uniform_int(3, 20);
        const auto edges = oracle::random_edges(rng, n, 0.2 + 0.6 * rng.uniform01());
        const Snapshot s = Snapshot::from_edges(n, edges);
        const auto dense = oracle::DenseGraph::from_edges(n, edges);
        std::vector<int> community(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) community[static_cast<std::size_t>(u)] = u;
        const double threshold = rng.uniform01();
        const int max_depth = rng.uniform_int(3, 6);

        const CliqueSet cliques = extract_cliques(s, community, threshold, max_depth);
        CHECK(disjoint(cliques));
        const bool whole = cliques.size() == 1 && static_cast<int>(cliques.cliques[0].size()) == n;
        for (const auto& clique : cliques.cliques) {
            CHECK(oracle::cid(dense, clique) >= threshold);  // independent recomputation
            if (!whole) {
                CHECK(clique.size() >= 3);
                CHECK(static_cast<int>(clique.size()) <= max_depth);
            }
        }
    }
}

TEST_CASE("search depth scaling smoke check") {
    // the size cap bounds the search tree; deeper caps on a dense
    // community must still finish promptly
    Rng rng(53);
    const int n = 40;
    const Snapshot s = Snapshot::from_edges(n, oracle::random_edges(rng, n, 0.45));
    std::vector<int> community(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) community[static_cast<std::size_t>(u)] = u;
    std::size_t previous_total = 0;
    for (int md : {3, 4, 5, 6}) {
        const CliqueSet cliques = extract_cliques(s, community, 0.9, md);
        std::size_t total = 0;
        for (const auto& clique : cliques.cliques) total += clique.size();
        CHECK(total >= previous_total / 2);  // growth stays sane as the cap rises
        previous_total = total;
    }
}

TEST_CASE("at threshold 1 every feature is complete and lies inside a maximal clique") {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform_int(3, 10);
        const auto edges = oracle::random_edges(rng, n, 0.3 + 0.5 * rng.uniform01());
        const Snapshot s = Snapshot::from_edges(n, edges);
        const auto dense = oracle::DenseGraph::from_edges(n, edges);
        std::vector<int> community(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) community[static_cast<std::size_t>(u)] = u;

        const CliqueSet cliques = extract_cliques(s, community, 1.0, 5);
        const auto maximal = oracle::maximal_cliques(dense, community);
        for (const auto& clique : cliques.cliques) {
            CHECK(oracle::cid(dense, clique) == 1.0);
            const bool contained = std::any_of(maximal.begin(), maximal.end(), [&](const auto& big) {
                return std::includes(big.begin(), big.end(), clique.begin(), clique.end());
            });
            CHECK(contained);
        }
    }
}
