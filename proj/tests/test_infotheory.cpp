#include <doctest.h>

#include <cmath>
#include <map>

#include "tmoga/infotheory.hpp"
#include "tmoga/metrics.hpp"
#include "oracles.hpp"

using namespace tmoga;

namespace {

JointDistribution joint_from_partitions(const Partition& a, const Partition& b) {
    const int ka = a.community_count();
    const int kb = b.community_count();
    std::vector<double> probs(static_cast<std::size_t>(ka) * static_cast<std::size_t>(kb), 0.0);
    const double mass = 1.0 / a.node_count();
    for (int u = 0; u < a.node_count(); ++u) {
        probs[static_cast<std::size_t>(a.label_of(u)) * static_cast<std::size_t>(kb) +
              static_cast<std::size_t>(b.label_of(u))] += mass;
    }
    return JointDistribution({ka, kb}, std::move(probs));
}

std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> result;
    std::vector<int> assignment(static_cast<std::size_t>(n), 0);
    while (true) {
        result.push_back(assignment);
        int position = n - 1;
        while (position > 0) {
            int prefix_max = 0;
            for (int i = 0; i < position; ++i) prefix_max = std::max(prefix_max, assignment[static_cast<std::size_t>(i)]);
            if (assignment[static_cast<std::size_t>(position)] <= prefix_max) break;
            --position;
        }
        if (position == 0) break;
        ++assignment[static_cast<std::size_t>(position)];
        for (int i = position + 1; i < n; ++i) assignment[static_cast<std::size_t>(i)] = 0;
    }
    return result;
}

}  // namespace

TEST_CASE("entropy worked examples") {
    CHECK(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(entropy(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
    CHECK(entropy(std::vector<double>{0.5, 0.25, 0.25}) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS(entropy(std::vector<double>{0.5, 0.2}));
    CHECK_THROWS(entropy(std::vector<double>{1.5, -0.5}));
}

TEST_CASE("mutual information worked examples") {
    // independent
    const JointDistribution independent({2, 2}, {0.25, 0.25, 0.25, 0.25});
    CHECK(mutual_information(independent) == doctest::Approx(0.0).epsilon(1e-12));

    // identity mapping: I(X;X) = H(X)
    const JointDistribution identity({3, 3}, {1.0 / 3, 0, 0, 0, 1.0 / 3, 0, 0, 0, 1.0 / 3});
    CHECK(mutual_information(identity) == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    // symmetry on random joints
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int ka = rng.uniform_int(1, 4);
        const int kb = rng.uniform_int(1, 4);
        std::vector<double> probs(static_cast<std::size_t>(ka * kb));
        double total = 0;
        for (auto& p : probs) {
            p = rng.uniform01() + 1e-6;
            total += p;
        }
        for (auto& p : probs) p /= total;
        const JointDistribution joint({ka, kb}, probs);
        std::vector<double> transposed(probs.size());
        for (int i = 0; i < ka; ++i) {
            for (int j = 0; j < kb; ++j) {
                transposed[static_cast<std::size_t>(j * ka + i)] = probs[static_cast<std::size_t>(i * kb + j)];
            }
        }
        const JointDistribution flipped({kb, ka}, transposed);
        CHECK(mutual_information(joint) == doctest::Approx(mutual_information(flipped)).epsilon(1e-10));
        CHECK(mutual_information(joint) >= -1e-12);
    }
}

TEST_CASE("kl divergence worked examples") {
    CHECK(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5}) == 0.0);
    CHECK(kl_divergence(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::isinf(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0})));

    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = rng.uniform_int(2, 6);
        std::vector<double> p(static_cast<std::size_t>(k)), q(static_cast<std::size_t>(k));
        double sp = 0, sq = 0;
        for (int i = 0; i < k; ++i) {
            p[static_cast<std::size_t>(i)] = rng.uniform01() + 1e-9;
            q[static_cast<std::size_t>(i)] = rng.uniform01() + 1e-9;
            sp += p[static_cast<std::size_t>(i)];
            sq += q[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < k; ++i) {
            p[static_cast<std::size_t>(i)] /= sp;
            q[static_cast<std::size_t>(i)] /= sq;
        }
        CHECK(kl_divergence(p, q) >= -1e-10);
        CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("probabilistic nmi matches the partition metric") {
    // identical and independent extremes
    const Partition two({0, 0, 1, 1});
    CHECK(nmi_prob(joint_from_partitions(two, two)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nmi_prob(joint_from_partitions(Partition({0, 0, 0, 0}), two)) == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform_int(2, 24);
        const Partition a(oracle::random_labels(rng, n, rng.uniform_int(1, 5)));
        const Partition b(oracle::random_labels(rng, n, rng.uniform_int(1, 5)));
        CHECK(nmi_prob(joint_from_partitions(a, b)) == doctest::Approx(nmi(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("compression objective worked examples") {
    // fully compressed: constant communities variable
    const JointDistribution constant({4, 1}, {0.25, 0.25, 0.25, 0.25});
    CHECK(ib_objective(constant, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

    // identity: H(X) (1 - beta)
    const JointDistribution identity({4, 4}, [] {
        std::vector<double> p(16, 0.0);
        for (int i = 0; i < 4; ++i) p[static_cast<std::size_t>(i * 4 + i)] = 0.25;
        return p;
    }());
    for (double beta : {0.0, 0.5, 2.0}) {
        CHECK(ib_objective(identity, beta) == doctest::Approx(std::log(4.0) * (1.0 - beta)).epsilon(1e-12));
    }

    // at large beta the all-singletons partition minimizes the objective
    const int n = 4;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<int> best;
    for (const auto& labels : all_partitions(n)) {
        const Partition p(labels);
        std::vector<double> probs(static_cast<std::size_t>(n * p.community_count()), 0.0);
        for (int u = 0; u < n; ++u) {
            probs[static_cast<std::size_t>(u * p.community_count() + p.label_of(u))] = 0.25;
        }
        const double value = ib_objective(JointDistribution({n, p.community_count()}, probs), 10.0);
        if (value < best_value) {
            best_value = value;
            best = labels;
        }
    }
    CHECK(best == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("instance construction enforces clique stability") {
    const Partition prev({0, 0, 0, 1, 1, 1});
    const Partition cur({0, 0, 0, 1, 1, 1});
    CliqueSet cliques;
    cliques.cliques = {{0, 1, 2}, {3, 4, 5}};
    const IBInstance instance = build_ib_instance(prev, cur, cliques);
    CHECK(instance.has_features());

    CliqueSet straddling;
    straddling.cliques = {{2, 3}};
    CHECK_THROWS_AS(build_ib_instance(prev, cur, straddling), std::invalid_argument);

    // straddles the current partition only
    const Partition moved({0, 0, 1, 1, 1, 1});
    CliqueSet prev_ok;
    prev_ok.cliques = {{0, 1, 2}};
    CHECK_THROWS_AS(build_ib_instance(prev, moved, prev_ok), std::invalid_argument);

    CHECK_FALSE(build_ib_instance(prev, cur, CliqueSet{}).has_features());
}

TEST_CASE("theorem checks on hand-built instances") {
    const Partition prev({0, 0, 0, 1, 1, 1});
    const Partition cur({0, 0, 0, 1, 1, 1});

    // no features: both gaps vanish
    const TheoremReport empty = verify_theorems(build_ib_instance(prev, cur, CliqueSet{}));
    CHECK(empty.thm1_ok);
    CHECK(empty.thm3_gap == 0.0);
    CHECK(empty.thm3_kl == 0.0);
    CHECK(empty.thm4_gap == 0.0);

    // full coverage: gaps are zero through the equality path
    CliqueSet full;
    full.cliques = {{0, 1, 2}, {3, 4, 5}};
    const TheoremReport covered = verify_theorems(build_ib_instance(prev, cur, full));
    CHECK(covered.thm1_ok);
    CHECK(covered.thm3_gap == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(covered.thm4_gap == doctest::Approx(0.0).epsilon(1e-12));

    // partial coverage: strictly positive compression gap
    CliqueSet partial;
    partial.cliques = {{0, 1, 2}};
    const TheoremReport half = verify_theorems(build_ib_instance(prev, cur, partial));
    CHECK(half.thm3_gap > 0.0);
    CHECK(half.thm3_gap == doctest::Approx(half.thm3_kl).epsilon(1e-12));
    CHECK(half.thm4_gap >= -1e-9);
}

TEST_CASE("randomized theorem verification") {
    const VerificationSummary summary = run_theorem_trials(500, 12345);
    CHECK(summary.passed());
    CHECK(summary.thm1_all);
    CHECK(summary.thm3_min_gap >= -1e-9);
    CHECK(summary.thm4_min_gap >= -1e-9);
    CHECK(summary.max_kl_mismatch <= 1e-9);

    const VerificationSummary corrupted = run_theorem_trials(10, 12345, /*inject_fault=*/true);
    CHECK_FALSE(corrupted.passed());
}

TEST_CASE("entropy never exceeds the uniform bound, exhaustively for small n") {
    CHECK(verify_thm1_exhaustive(6));
}

TEST_CASE("joint distribution marginals and validation") {
    CHECK_THROWS(JointDistribution({2, 2}, {0.5, 0.5, 0.5, 0.5}));
    CHECK_THROWS(JointDistribution({2}, {1.5, -0.5}));

    const JointDistribution joint({2, 3}, {0.1, 0.2, 0.05, 0.15, 0.3, 0.2});
    const auto row = joint.marginal(0);
    CHECK(row[0] == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(row[1] == doctest::Approx(0.65).epsilon(1e-12));
    const auto col = joint.marginal(1);
    CHECK(col[1] == doctest::Approx(0.5).epsilon(1e-12));

    // pair marginal of a 3-axis joint collapses the middle axis
    std::vector<double> probs(8, 0.125);
    const JointDistribution cube({2, 2, 2}, probs);
    const JointDistribution pair = cube.marginal_pair(0, 2);
    CHECK(pair.shape() == std::vector<int>{2, 2});
    for (double p : pair.flat()) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}
