#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tmoga/benchgen.hpp"
#include "tmoga/graph.hpp"
#include "tmoga/moea.hpp"
#include "tmoga/partition.hpp"

namespace tmoga {

struct ParetoEntry {
    ObjectiveVector objectives;
    std::vector<int> labels;  // decoded partition labels
};

struct SnapshotResult {
    int time = 0;  // 1-based
    std::vector<int> chosen_labels;
    int community_count = 0;
    double modularity_value = 0.0;
    double community_score_value = 0.0;
    std::optional<double> nmi_previous;  // absent on the first snapshot
    std::optional<double> nmi_truth;     // present when ground truth was supplied
    double wall_time_sec = 0.0;
    double feature_transfer_sec = 0.0;
    std::vector<ParetoEntry> front;

    Partition chosen() const { return Partition(chosen_labels); }
};

struct RunReport {
    GAParams params;
    std::vector<SnapshotResult> snapshots;
    double total_time_sec = 0.0;
};

struct RunOptions {
    const std::vector<Partition>* truths = nullptr;  // per-snapshot ground truth, optional
    std::filesystem::path trace_dir;                 // per-generation CSV traces when set
    std::filesystem::path feature_dump_dir;          // transferred cliques, one per line, when set
};

/// Full detection loop: the first snapshot optimizes the snapshot quality
/// alone from a label-propagation population; later snapshots extract
/// features from the previous chosen partition, migrate them into the
/// initial population, and optimize quality together with similarity to
/// the previous result. One solution per snapshot is selected from the
/// Pareto front by the configured criterion.
RunReport run_tmoga(const DynamicNetwork& network, const GAParams& params, const RunOptions& options = {});

/// Decoded partition of the front member maximizing the criterion; ties
/// break toward higher modularity, then fewer communities, then
/// lexicographically smallest labels.
Partition select_final(const std::vector<Individual>& front, const Snapshot& snapshot,
                       ParetoSelector selector);

/// Mean over the best `top_k` of `n_solutions` initial solutions, per
/// strategy per snapshot, scored by similarity to ground truth. Later
/// snapshots hand the transfer strategies the true previous partition.
struct InitComparison {
    std::vector<std::string> strategies;             // row labels
    std::vector<std::vector<double>> mean_top_nmi;   // [strategy][snapshot]
};

InitComparison compare_initializations(const DynamicNetwork& network, const std::vector<Partition>& truths,
                                       const GAParams& params, std::uint64_t seed,
                                       int n_solutions = 200, int top_k = 20);

}  // namespace tmoga
