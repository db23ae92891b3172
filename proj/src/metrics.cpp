#include "tmoga/metrics.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace tmoga {

ConfusionMatrix confusion(const Partition& a, const Partition& b) {
    if (a.node_count() != b.node_count()) throw std::invalid_argument("partitions over different node universes");
    ConfusionMatrix m;
    const auto ka = static_cast<std::size_t>(a.community_count());
    const auto kb = static_cast<std::size_t>(b.community_count());
    m.counts.assign(ka, std::vector<std::int64_t>(kb, 0));
    m.row_sums.assign(ka, 0);
    m.col_sums.assign(kb, 0);
    for (int u = 0; u < a.node_count(); ++u) {
        const auto i = static_cast<std::size_t>(a.label_of(u));
        const auto j = static_cast<std::size_t>(b.label_of(u));
        ++m.counts[i][j];
        ++m.row_sums[i];
        ++m.col_sums[j];
    }
    return m;
}

namespace {

void check_coverage(const Snapshot& snapshot, const Partition& partition) {
    if (partition.node_count() != snapshot.node_count()) {
        throw std::invalid_argument("partition does not cover the snapshot's nodes");
    }
}

}  // namespace

double modularity(const Snapshot& snapshot, const Partition& partition) {
    check_coverage(snapshot, partition);
    if (snapshot.edge_count() == 0) throw std::domain_error("modularity undefined on an edgeless graph");

    const auto k = static_cast<std::size_t>(partition.community_count());
    std::vector<std::int64_t> internal(k, 0);
    std::vector<std::int64_t> degree_sum(k, 0);
    for (int u = 0; u < snapshot.node_count(); ++u) {
        const auto c = static_cast<std::size_t>(partition.label_of(u));
        degree_sum[c] += snapshot.degree(u);
        for (int v : snapshot.neighbors(u)) {
            if (v > u && partition.label_of(v) == static_cast<int>(c)) ++internal[c];
        }
    }

    const double m = static_cast<double>(snapshot.edge_count());
    double q = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        const double half_degree = static_cast<double>(degree_sum[c]) / (2.0 * m);
        q += static_cast<double>(internal[c]) / m - half_degree * half_degree;
    }
    return q;
}

double nmi(const Partition& a, const Partition& b) {
    const ConfusionMatrix m = confusion(a, b);
    const double n = static_cast<double>(a.node_count());

    double numerator = 0.0;
    for (std::size_t i = 0; i < m.counts.size(); ++i) {
        for (std::size_t j = 0; j < m.counts[i].size(); ++j) {
            const auto c = m.counts[i][j];
            if (c == 0) continue;
            numerator += static_cast<double>(c) *
                         std::log(static_cast<double>(c) * n /
                                  (static_cast<double>(m.row_sums[i]) * static_cast<double>(m.col_sums[j])));
        }
    }
    numerator *= -2.0;

    double denominator = 0.0;
    for (auto s : m.row_sums) denominator += static_cast<double>(s) * std::log(static_cast<double>(s) / n);
    for (auto s : m.col_sums) denominator += static_cast<double>(s) * std::log(static_cast<double>(s) / n);

    // Two single-community partitions are identical: 0/0 reads as 1.
    if (denominator == 0.0) return 1.0;
    return numerator / denominator;
}

double community_score(const Snapshot& snapshot, const Partition& partition) {
    check_coverage(snapshot, partition);
    double score = 0.0;
    for (const auto& community : partition.communities()) {
        const double size = static_cast<double>(community.size());
        const int label = partition.label_of(community.front());
        double sum_mu_sq = 0.0;
        std::int64_t internal_twice = 0;
        for (int u : community) {
            int inside = 0;
            for (int v : snapshot.neighbors(u)) {
                if (partition.label_of(v) == label) ++inside;
            }
            const double mu = static_cast<double>(inside) / size;
            sum_mu_sq += mu * mu;
            internal_twice += inside;
        }
        score += sum_mu_sq / size * static_cast<double>(internal_twice);
    }
    return score;
}

double cid(const Snapshot& snapshot, std::span<const int> nodes) {
    std::set<int> unique(nodes.begin(), nodes.end());
    const auto s = static_cast<double>(unique.size());
    if (unique.size() < 2) throw std::domain_error("CID undefined on sets of fewer than 2 nodes");
    const std::vector<int> members(unique.begin(), unique.end());
    const auto l = static_cast<double>(snapshot.internal_edge_count(members));
    return 2.0 * l / (s * (s - 1.0));
}

}  // namespace tmoga
