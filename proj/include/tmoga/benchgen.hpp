#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmoga/graph.hpp"
#include "tmoga/partition.hpp"

namespace tmoga {

struct EventRecord {
    int time = 0;                  // 0-based snapshot index the event takes effect at
    std::string kind;              // birth, death, expand, contract, hide, restore, merge, split, move
    std::vector<int> communities;  // generator community ids involved
    std::vector<int> sizes;        // node counts involved, aligned with `communities` where meaningful
};

/// A generated dynamic network with per-snapshot ground truth.
struct GroundTruthSequence {
    DynamicNetwork network;
    std::vector<Partition> truths;
    std::vector<EventRecord> events;
};

/// Fixed-community benchmark: 10 snapshots, 128 nodes in 4 communities of
/// 32, expected node degree 16 of which z edges leave the community. From
/// the second snapshot on, 3 random nodes per community move to a random
/// other community and all edges are regenerated.
GroundTruthSequence gen_synfix(int z, std::uint64_t seed);

/// Variable-community benchmark: 10 snapshots, 256 nodes starting as 4
/// communities of 64. Snapshots 2-5 each split 8 nodes per original
/// community into one new community (8 communities of 32 by snapshot 5),
/// snapshot 6 repeats snapshot 5, snapshots 7-10 replay the splits
/// backwards. Same degree model as gen_synfix.
GroundTruthSequence gen_synvar(int z, std::uint64_t seed);

enum class EventModel { birth_death, expand_contract, intermittent, merge_split };

struct EventParams {
    int nodes = 1000;
    int snapshots = 5;
    int average_degree = 8;
    int max_degree = 15;
    double mixing = 0.2;  // fraction of a node's degree that leaves its community
    int min_community = 24;
    int max_community = 35;
    double reassign_probability = 0.2;
    int birth_count = 3;
    int death_count = 3;
    int expand_count = 3;
    int contract_count = 3;
    double resize_rate = 0.25;
    double hide_rate = 0.1;
    int merge_count = 3;
    int split_count = 3;
};

/// Planted-partition snapshots with per-step membership churn and one of
/// four community-level event models. Community sizes are drawn in
/// [min_community, max_community] at generation time; events may push them
/// outside afterwards. Hidden communities (intermittent model) keep their
/// nodes but isolate them for one snapshot, during which the truth marks
/// them as singletons. Throws std::invalid_argument on infeasible size
/// constraints.
GroundTruthSequence gen_events(EventModel model, const EventParams& params, std::uint64_t seed);

EventModel event_model_from_string(const std::string& name);
std::string to_string(EventModel model);

}  // namespace tmoga
