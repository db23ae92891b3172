#include "tmoga/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tmoga {

namespace {

constexpr double kSumTolerance = 1e-12;

double checked_total(std::span<const double> values) {
    double total = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("negative probability");
        total += v;
    }
    return total;
}

double entropy_unchecked(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<int> shape, std::vector<double> probabilities)
    : shape_(std::move(shape)), probabilities_(std::move(probabilities)) {
    if (shape_.empty()) throw std::invalid_argument("joint needs at least one axis");
    std::size_t cells = 1;
    for (int extent : shape_) {
        if (extent < 1) throw std::invalid_argument("axis extent must be >= 1");
        cells *= static_cast<std::size_t>(extent);
    }
    if (cells != probabilities_.size()) throw std::invalid_argument("probability count does not match shape");
    const double total = checked_total(probabilities_);
    if (std::abs(total - 1.0) > kSumTolerance * std::max<double>(1.0, static_cast<double>(cells))) {
        throw std::invalid_argument("probabilities do not sum to 1");
    }
}

std::vector<double> JointDistribution::marginal(int axis) const {
    if (axis < 0 || axis >= axes()) throw std::out_of_range("axis out of range");
    std::vector<double> result(static_cast<std::size_t>(shape_[static_cast<std::size_t>(axis)]), 0.0);
    std::size_t stride = 1;
    for (int a = axes() - 1; a > axis; --a) stride *= static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
    const std::size_t extent = result.size();
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        result[(i / stride) % extent] += probabilities_[i];
    }
    return result;
}

JointDistribution JointDistribution::marginal_pair(int axis_a, int axis_b) const {
    if (axis_a == axis_b) throw std::invalid_argument("marginal_pair needs two distinct axes");
    auto stride_of = [&](int axis) {
        std::size_t stride = 1;
        for (int a = axes() - 1; a > axis; --a) {
            stride *= static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
        }
        return stride;
    };
    const std::size_t stride_a = stride_of(axis_a);
    const std::size_t stride_b = stride_of(axis_b);
    const std::size_t extent_a = static_cast<std::size_t>(shape_[static_cast<std::size_t>(axis_a)]);
    const std::size_t extent_b = static_cast<std::size_t>(shape_[static_cast<std::size_t>(axis_b)]);
    std::vector<double> probs(extent_a * extent_b, 0.0);
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        const std::size_t ia = (i / stride_a) % extent_a;
        const std::size_t ib = (i / stride_b) % extent_b;
        probs[ia * extent_b + ib] += probabilities_[i];
    }
    return JointDistribution({static_cast<int>(extent_a), static_cast<int>(extent_b)}, std::move(probs));
}

double entropy(std::span<const double> distribution) {
    const double total = checked_total(distribution);
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("entropy argument is not a distribution");
    return entropy_unchecked(distribution);
}

double mutual_information(const JointDistribution& joint) {
    if (joint.axes() != 2) throw std::invalid_argument("mutual information needs a two-axis joint");
    const std::vector<double> pa = joint.marginal(0);
    const std::vector<double> pb = joint.marginal(1);
    const auto& flat = joint.flat();
    const std::size_t kb = pb.size();
    double info = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        for (std::size_t j = 0; j < kb; ++j) {
            const double pij = flat[i * kb + j];
            if (pij > 0.0) info += pij * std::log(pij / (pa[i] * pb[j]));
        }
    }
    return info;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("distributions of different size");
    checked_total(p);
    checked_total(q);
    double divergence = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
        divergence += p[i] * std::log(p[i] / q[i]);
    }
    return divergence;
}

double nmi_prob(const JointDistribution& joint) {
    if (joint.axes() != 2) throw std::invalid_argument("nmi needs a two-axis joint");
    const double ha = entropy_unchecked(joint.marginal(0));
    const double hb = entropy_unchecked(joint.marginal(1));
    if (ha + hb == 0.0) return 1.0;
    return 2.0 * mutual_information(joint) / (ha + hb);
}

double ib_objective(const JointDistribution& joint_x_xtilde, double beta) {
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
    return mutual_information(joint_x_xtilde) - beta * entropy_unchecked(joint_x_xtilde.marginal(1));
}

bool IBInstance::has_features() const {
    return std::find(in_feature.begin(), in_feature.end(), 1) != in_feature.end();
}

namespace {

int max_label(const std::vector<int>& labels) { return *std::max_element(labels.begin(), labels.end()); }

}  // namespace

JointDistribution IBInstance::joint() const {
    const int k_cur = max_label(labels_cur) + 1;
    const int k_prev = max_label(labels_prev) + 1;
    const int k_feature = k_cur + 1;  // one excluded outcome for uncovered nodes
    const double mass = 1.0 / node_count;
    std::vector<double> probs(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(k_cur) *
                                  static_cast<std::size_t>(k_prev) * static_cast<std::size_t>(k_feature),
                              0.0);
    for (int u = 0; u < node_count; ++u) {
        const auto cur = static_cast<std::size_t>(labels_cur[static_cast<std::size_t>(u)]);
        const auto prev = static_cast<std::size_t>(labels_prev[static_cast<std::size_t>(u)]);
        const std::size_t feature = in_feature[static_cast<std::size_t>(u)] ? cur : static_cast<std::size_t>(k_cur);
        const std::size_t index =
            ((static_cast<std::size_t>(u) * static_cast<std::size_t>(k_cur) + cur) *
                 static_cast<std::size_t>(k_prev) +
             prev) *
                static_cast<std::size_t>(k_feature) +
            feature;
        probs[index] = mass;
    }
    return JointDistribution({node_count, k_cur, k_prev, k_feature}, std::move(probs));
}

JointDistribution IBInstance::joint_node_cur() const { return joint().marginal_pair(0, 1); }
JointDistribution IBInstance::joint_cur_prev() const { return joint().marginal_pair(1, 2); }
JointDistribution IBInstance::joint_cur_feature() const { return joint().marginal_pair(1, 3); }

IBInstance build_ib_instance(const Partition& previous, const Partition& current,
                             const CliqueSet& cliques, double beta) {
    if (previous.node_count() != current.node_count()) {
        throw std::invalid_argument("partitions over different node universes");
    }
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
    IBInstance instance;
    instance.node_count = previous.node_count();
    instance.labels_prev = previous.labels();
    instance.labels_cur = current.labels();
    instance.in_feature.assign(static_cast<std::size_t>(instance.node_count), 0);
    instance.beta = beta;

    for (const auto& clique : cliques.cliques) {
        if (clique.empty()) continue;
        const int prev_label = previous.label_of(clique.front());
        const int cur_label = current.label_of(clique.front());
        for (int u : clique) {
            if (u < 0 || u >= instance.node_count) throw std::out_of_range("clique node out of range");
            if (previous.label_of(u) != prev_label || current.label_of(u) != cur_label) {
                throw std::invalid_argument("clique is not stable across the two partitions");
            }
            if (instance.in_feature[static_cast<std::size_t>(u)]) {
                throw std::invalid_argument("cliques are not disjoint");
            }
            instance.in_feature[static_cast<std::size_t>(u)] = 1;
        }
    }
    return instance;
}

TheoremReport verify_theorems(const IBInstance& instance) {
    const int n = instance.node_count;
    const double mass = 1.0 / n;
    const int k_cur = max_label(instance.labels_cur) + 1;

    std::vector<double> p_cur(static_cast<std::size_t>(k_cur), 0.0);
    for (int label : instance.labels_cur) p_cur[static_cast<std::size_t>(label)] += mass;

    TheoremReport report;
    report.thm1_ok = entropy_unchecked(p_cur) <= std::log(static_cast<double>(n)) + 1e-9;

    if (!instance.has_features()) {
        // No feature variable: the compressed objectives coincide.
        return report;
    }

    // Compression side: the feature-augmented mutual information carries
    // mass only on clique nodes, so the gap is the relative-entropy sum of
    // the remaining node/community cells against the product marginals.
    const double info_full = mutual_information(instance.joint_node_cur());
    double info_feature = 0.0;
    std::vector<double> leftover_p;
    std::vector<double> leftover_q;
    for (int u = 0; u < n; ++u) {
        const double p_community = p_cur[static_cast<std::size_t>(instance.labels_cur[static_cast<std::size_t>(u)])];
        if (instance.in_feature[static_cast<std::size_t>(u)]) {
            info_feature += mass * std::log(mass / (mass * p_community));
        } else {
            leftover_p.push_back(mass);
            leftover_q.push_back(mass * p_community);
        }
    }
    report.thm3_gap = info_full - info_feature;
    report.thm3_kl = kl_divergence(leftover_p, leftover_q);

    // Similarity side: the joint entropy over (current, feature, previous)
    // collapses to the pair entropy on the consistency set, so only the
    // (current, feature) entropy in the denominator changes.
    const double h_cur = entropy_unchecked(p_cur);
    const double h_prev = entropy_unchecked(instance.joint().marginal(2));
    const double h_pair = entropy_unchecked(instance.joint_cur_prev().flat());
    const double h_cur_feature = entropy_unchecked(instance.joint_cur_feature().flat());
    const double nmi_plain = (h_cur + h_prev) > 0.0 ? 2.0 * (h_cur + h_prev - h_pair) / (h_cur + h_prev) : 1.0;
    const double nmi_feature =
        (h_cur_feature + h_prev) > 0.0 ? 2.0 * (h_cur_feature + h_prev - h_pair) / (h_cur_feature + h_prev) : 1.0;
    report.thm4_gap = nmi_feature - nmi_plain;
    return report;
}

IBInstance random_ib_instance(Rng& rng) {
    const int n = rng.uniform_int(6, 40);
    const int k_prev = rng.uniform_int(1, std::min(6, n));

    std::vector<int> labels_prev(static_cast<std::size_t>(n));
    for (auto& label : labels_prev) label = rng.uniform_int(0, k_prev - 1);

    std::vector<int> labels_cur = labels_prev;
    for (auto& label : labels_cur) {
        if (rng.uniform01() < 0.3) label = rng.uniform_int(0, k_prev);  // allows fresh communities
    }
    const Partition previous(labels_prev);
    const Partition current(labels_cur);

    CliqueSet cliques;
    const int variant = rng.uniform_int(0, 9);
    if (variant == 0) {
        // keep cliques empty
    } else if (variant == 1) {
        // full coverage: every (previous, current) intersection cell
        std::map<std::pair<int, int>, std::vector<int>> cells;
        for (int u = 0; u < n; ++u) cells[{previous.label_of(u), current.label_of(u)}].push_back(u);
        for (auto& [key, nodes] : cells) cliques.cliques.push_back(std::move(nodes));
    } else {
        const int count = rng.uniform_int(1, 3);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        for (int c = 0; c < count; ++c) {
            const int anchor = rng.uniform_int(0, n - 1);
            if (used[static_cast<std::size_t>(anchor)]) continue;
            // nodes sharing the anchor's previous community, current label
            // forced to the anchor's for stability
            std::vector<int> pool;
            for (int u = 0; u < n; ++u) {
                if (!used[static_cast<std::size_t>(u)] && previous.label_of(u) == previous.label_of(anchor)) {
                    pool.push_back(u);
                }
            }
            if (pool.size() < 2) continue;
            rng.shuffle(pool);
            const int size = rng.uniform_int(2, std::min<int>(6, static_cast<int>(pool.size())));
            std::vector<int> clique(pool.begin(), pool.begin() + size);
            std::sort(clique.begin(), clique.end());
            for (int u : clique) used[static_cast<std::size_t>(u)] = 1;
            cliques.cliques.push_back(std::move(clique));
        }
        // realign the current labels so each clique sits in one community
        std::vector<int> adjusted = current.labels();
        for (const auto& clique : cliques.cliques) {
            for (int u : clique) adjusted[static_cast<std::size_t>(u)] = adjusted[static_cast<std::size_t>(clique.front())];
        }
        return build_ib_instance(previous, Partition(adjusted), cliques);
    }
    return build_ib_instance(previous, current, cliques);
}

VerificationSummary run_theorem_trials(int trials, std::uint64_t seed, bool inject_fault) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    Rng rng(Rng::mix(seed, 0x49425652));
    VerificationSummary summary;
    summary.trials = trials;
    constexpr double kTolerance = 1e-9;

    std::vector<double> thm3_gaps;
    std::vector<double> thm4_gaps;
    thm3_gaps.reserve(static_cast<std::size_t>(trials));
    thm4_gaps.reserve(static_cast<std::size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
        const IBInstance instance = random_ib_instance(rng);
        TheoremReport report = verify_theorems(instance);
        if (inject_fault && trial == 0) report.thm3_gap -= 1.0;

        const double mismatch = std::abs(report.thm3_gap - report.thm3_kl);
        summary.max_kl_mismatch = std::max(summary.max_kl_mismatch, mismatch);
        summary.thm1_all = summary.thm1_all && report.thm1_ok;
        if (!report.thm1_ok || report.thm3_gap < -kTolerance || report.thm4_gap < -kTolerance ||
            mismatch > kTolerance) {
            ++summary.failures;
        }
        thm3_gaps.push_back(report.thm3_gap);
        thm4_gaps.push_back(report.thm4_gap);
    }

    auto summarize = [](std::vector<double>& gaps, double& min_out, double& median_out) {
        std::sort(gaps.begin(), gaps.end());
        min_out = gaps.front();
        median_out = gaps[gaps.size() / 2];
    };
    summarize(thm3_gaps, summary.thm3_min_gap, summary.thm3_median_gap);
    summarize(thm4_gaps, summary.thm4_min_gap, summary.thm4_median_gap);
    return summary;
}

bool verify_thm1_exhaustive(int max_n) {
    for (int n = 1; n <= max_n; ++n) {
        // Enumerate set partitions as restricted growth strings.
        std::vector<int> assignment(static_cast<std::size_t>(n), 0);
        const double h_nodes = std::log(static_cast<double>(n));
        while (true) {
            std::vector<double> sizes;
            for (int u = 0; u < n; ++u) {
                const auto label = static_cast<std::size_t>(assignment[static_cast<std::size_t>(u)]);
                if (label >= sizes.size()) sizes.resize(label + 1, 0.0);
                sizes[label] += 1.0 / n;
            }
            if (entropy_unchecked(sizes) > h_nodes + 1e-9) return false;

            // next restricted growth string
            int position = n - 1;
            while (position > 0) {
                int prefix_max = 0;
                for (int i = 0; i < position; ++i) {
                    prefix_max = std::max(prefix_max, assignment[static_cast<std::size_t>(i)]);
                }
                if (assignment[static_cast<std::size_t>(position)] <= prefix_max) break;
                --position;
            }
            if (position == 0) break;
            ++assignment[static_cast<std::size_t>(position)];
            for (int i = position + 1; i < n; ++i) assignment[static_cast<std::size_t>(i)] = 0;
        }
    }
    return true;
}

}  // namespace tmoga
