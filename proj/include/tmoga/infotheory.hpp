#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tmoga/cliques.hpp"
#include "tmoga/partition.hpp"
#include "tmoga/rng.hpp"

namespace tmoga {

/// Finite discrete joint distribution over one or more outcome axes,
/// stored flat in row-major order. Entries are nonnegative and sum to 1.
class JointDistribution {
public:
    JointDistribution(std::vector<int> shape, std::vector<double> probabilities);

    int axes() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    const std::vector<double>& flat() const { return probabilities_; }

    std::vector<double> marginal(int axis) const;
    JointDistribution marginal_pair(int axis_a, int axis_b) const;

private:
    std::vector<int> shape_;
    std::vector<double> probabilities_;
};

/// Shannon entropy -sum p log p (natural log, 0 log 0 = 0). The argument
/// must be a distribution: nonnegative, summing to 1.
double entropy(std::span<const double> distribution);

/// I(A; B) of a two-axis joint.
double mutual_information(const JointDistribution& joint);

/// sum p log(p/q) over matching outcomes; +infinity when p puts mass where
/// q has none. Inputs need not be normalized (restricted measures are
/// compared termwise), but must be nonnegative.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// 2 I(A;B) / (H(A) + H(B)) of a two-axis joint; 1 when both entropies
/// vanish (two constant variables are identical).
double nmi_prob(const JointDistribution& joint);

/// Compression objective I(X; X~) - beta * H(X~) of a joint whose second
/// axis is the compressed variable.
double ib_objective(const JointDistribution& joint_x_xtilde, double beta);

/// Verification instance: a uniform node variable X, deterministic
/// community assignments at the previous and current step, and a feature
/// variable Z that agrees with both partitions on the nodes of stable
/// cliques and carries a single excluded outcome elsewhere.
struct IBInstance {
    int node_count = 0;
    std::vector<int> labels_prev;      // normalized community labels
    std::vector<int> labels_cur;
    std::vector<char> in_feature;      // per node, 1 when covered by a clique
    double beta = 1.0;

    bool has_features() const;

    /// Full joint over (X, X~t, X~prev, Z); Z's last outcome is the
    /// excluded "no feature" value.
    JointDistribution joint() const;
    JointDistribution joint_node_cur() const;   // (X, X~t)
    JointDistribution joint_cur_prev() const;   // (X~t, X~prev)
    JointDistribution joint_cur_feature() const;  // (X~t, Z)
};

/// Builds an instance from two partitions over the same nodes and a set of
/// cliques, each of which must lie inside one community of each partition.
IBInstance build_ib_instance(const Partition& previous, const Partition& current,
                             const CliqueSet& cliques, double beta = 1.0);

struct TheoremReport {
    bool thm1_ok = false;   // H(X~) <= H(X)
    double thm3_gap = 0.0;  // I(X;X~) - I(X,Z;X~), nonnegative
    double thm3_kl = 0.0;   // the same gap as the leftover relative-entropy sum
    double thm4_gap = 0.0;  // NMI(X~t,Z; X~prev) - NMI(X~t; X~prev), nonnegative
};

/// Evaluates the three verified statements on one instance. The feature
/// variable enters with zero mass off the clique consistency set, so with
/// no cliques both gaps are exactly zero.
TheoremReport verify_theorems(const IBInstance& instance);

/// Random instance over 6..40 nodes; occasionally degenerate (no cliques,
/// or cliques covering every node).
IBInstance random_ib_instance(Rng& rng);

struct VerificationSummary {
    int trials = 0;
    int failures = 0;
    bool thm1_all = true;
    double thm3_min_gap = 0.0;
    double thm3_median_gap = 0.0;
    double thm4_min_gap = 0.0;
    double thm4_median_gap = 0.0;
    double max_kl_mismatch = 0.0;  // |thm3_gap - thm3_kl| worst case

    bool passed() const { return failures == 0; }
};

/// Randomized verification batch (tolerance 1e-9 per check). The fault
/// injection hook corrupts the first trial's gap and is used as a negative
/// control for the reporting path.
VerificationSummary run_theorem_trials(int trials, std::uint64_t seed, bool inject_fault = false);

/// H(X~) <= H(X) over every partition of n <= max_n elements.
bool verify_thm1_exhaustive(int max_n = 6);

}  // namespace tmoga
