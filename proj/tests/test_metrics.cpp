#include <doctest.h>

#include <sstream>

#include "tmoga/metrics.hpp"
#include "tmoga/rng.hpp"
#include "oracles.hpp"

using namespace tmoga;

namespace {

Snapshot make_snapshot(int n, const std::vector<std::pair<int, int>>& edges) {
    return Snapshot::from_edges(n, edges);
}

const std::vector<std::pair<int, int>> kBarbell = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}};
const std::vector<std::pair<int, int>> kTriangle = {{0, 1}, {0, 2}, {1, 2}};

}  // namespace

TEST_CASE("modularity worked examples") {
    const Snapshot barbell = make_snapshot(6, kBarbell);
    CHECK(modularity(barbell, Partition({0, 0, 0, 0, 0, 0})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(modularity(barbell, Partition({0, 0, 0, 1, 1, 1})) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));

    const Snapshot k3 = make_snapshot(3, kTriangle);
    CHECK(modularity(k3, Partition({0, 1, 2})) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

    const Snapshot edgeless(3);
    CHECK_THROWS_AS(modularity(edgeless, Partition({0, 1, 2})), std::domain_error);
}

TEST_CASE("nmi worked examples") {
    const Partition two({0, 0, 1, 1});
    CHECK(nmi(two, two) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nmi(Partition({0, 0, 0, 0}), two) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(nmi(two, Partition({0, 1, 0, 1})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(nmi(Partition({0, 0}), Partition({0, 0})) == 1.0);  // 0/0 convention
    CHECK_THROWS(nmi(two, Partition({0, 0, 1})));
}

TEST_CASE("community score worked examples") {
    const Snapshot k3 = make_snapshot(3, kTriangle);
    CHECK(community_score(k3, Partition({0, 0, 0})) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(community_score(k3, Partition({0, 1, 2})) == 0.0);

    const Snapshot barbell = make_snapshot(6, kBarbell);
    CHECK(community_score(barbell, Partition({0, 0, 0, 1, 1, 1})) == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("cid worked examples") {
    const Snapshot k3 = make_snapshot(3, kTriangle);
    CHECK(cid(k3, std::vector<int>{0, 1, 2}) == doctest::Approx(1.0).epsilon(1e-12));

    const Snapshot path = make_snapshot(3, {{0, 1}, {1, 2}});
    CHECK(cid(path, std::vector<int>{0, 1, 2}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const Snapshot pair(2);
    CHECK(cid(pair, std::vector<int>{0, 1}) == 0.0);
    CHECK_THROWS_AS(cid(pair, std::vector<int>{0}), std::domain_error);
}

TEST_CASE("confusion matrix worked examples") {
    const Partition a({0, 0, 1, 1});
    {
        const ConfusionMatrix m = confusion(a, a);
        CHECK(m.counts == std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 2}});
    }
    {
        const ConfusionMatrix m = confusion(a, Partition({0, 1, 0, 1}));
        CHECK(m.counts == std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 1}});
    }
    {
        const ConfusionMatrix m = confusion(Partition({0, 0, 0, 0}), Partition({0, 1, 2, 3}));
        CHECK(m.counts == std::vector<std::vector<std::int64_t>>{{1, 1, 1, 1}});
        CHECK(m.row_sums == std::vector<std::int64_t>{4});
        CHECK(m.col_sums == std::vector<std::int64_t>{1, 1, 1, 1});
    }
}

TEST_CASE("metrics match the brute-force evaluators on random instances") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = rng.uniform_int(2, 12);
        const auto edges = oracle::random_edges(rng, n, 0.15 + 0.7 * rng.uniform01());
        const Snapshot snapshot = make_snapshot(n, edges);
        const auto dense = oracle::DenseGraph::from_edges(n, edges);
        const auto labels_a = oracle::random_labels(rng, n, rng.uniform_int(1, n));
        const auto labels_b = oracle::random_labels(rng, n, rng.uniform_int(1, n));
        const Partition pa(labels_a);
        const Partition pb(labels_b);

        if (snapshot.edge_count() > 0) {
            CHECK(modularity(snapshot, pa) == doctest::Approx(oracle::modularity(dense, labels_a)).epsilon(1e-12));
        }
        CHECK(nmi(pa, pb) == doctest::Approx(oracle::nmi(labels_a, labels_b)).epsilon(1e-12));
        CHECK(community_score(snapshot, pa) ==
              doctest::Approx(oracle::community_score(dense, labels_a)).epsilon(1e-12));

        if (n >= 2) {
            std::vector<int> subset;
            for (int u = 0; u < n; ++u) {
                if (rng.uniform01() < 0.5) subset.push_back(u);
            }
            if (subset.size() >= 2) {
                CHECK(cid(snapshot, subset) == doctest::Approx(oracle::cid(dense, subset)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("nmi symmetry, identity and range") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform_int(2, 20);
        const Partition a(oracle::random_labels(rng, n, rng.uniform_int(1, n)));
        const Partition b(oracle::random_labels(rng, n, rng.uniform_int(1, n)));
        const double ab = nmi(a, b);
        CHECK(ab == doctest::Approx(nmi(b, a)).epsilon(1e-12));
        CHECK(ab >= -1e-12);
        CHECK(ab <= 1.0 + 1e-12);
        if (a.community_count() >= 2) CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("modularity range over randomized partitions") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform_int(3, 14);
        const auto edges = oracle::random_edges(rng, n, 0.3 + 0.6 * rng.uniform01());
        const Snapshot snapshot = make_snapshot(n, edges);
        if (snapshot.edge_count() == 0) continue;
        const double q = modularity(snapshot, Partition(oracle::random_labels(rng, n, n)));
        CHECK(q >= -0.5 - 1e-12);
        CHECK(q <= 1.0 + 1e-12);
        CHECK(modularity(snapshot, Partition(std::vector<int>(static_cast<std::size_t>(n), 0))) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("cid is monotone under internal edge addition and 1 on complete sets") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(3, 10);
        auto edges = oracle::random_edges(rng, n, 0.4);
        const Snapshot before = make_snapshot(n, edges);
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) all[static_cast<std::size_t>(u)] = u;

        // add one missing internal edge, if any
        bool added = false;
        for (int u = 0; u < n && !added; ++u) {
            for (int v = u + 1; v < n && !added; ++v) {
                if (!before.has_edge(u, v)) {
                    edges.emplace_back(u, v);
                    added = true;
                }
            }
        }
        if (added) {
            const Snapshot after = make_snapshot(n, edges);
            CHECK(cid(after, all) >= cid(before, all));
        }
    }
    // complete graph
    std::vector<std::pair<int, int>> complete;
    for (int u = 0; u < 6; ++u) {
        for (int v = u + 1; v < 6; ++v) complete.emplace_back(u, v);
    }
    CHECK(cid(make_snapshot(6, complete), std::vector<int>{0, 1, 2, 3, 4, 5}) == 1.0);
}
