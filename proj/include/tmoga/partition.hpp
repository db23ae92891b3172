#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tmoga/graph.hpp"

namespace tmoga {

/// Disjoint covering assignment of nodes to communities. Labels are
/// normalized to 0..k-1 in order of first appearance; communities are
/// sorted node lists.
class Partition {
public:
    /// Normalizes arbitrary integer labels (one per node, n >= 1).
    explicit Partition(const std::vector<int>& raw_labels);

    int node_count() const { return static_cast<int>(labels_.size()); }

    int community_count() const { return static_cast<int>(communities_.size()); }

    int label_of(int u) const { return labels_.at(static_cast<std::size_t>(u)); }

    const std::vector<int>& labels() const { return labels_; }

    const std::vector<std::vector<int>>& communities() const { return communities_; }

    bool operator==(const Partition& other) const { return labels_ == other.labels_; }

private:
    std::vector<int> labels_;
    std::vector<std::vector<int>> communities_;
};

/// Writes "node_id label" lines in registry index order (same format as
/// ground-truth files).
void save_partition(const Partition& partition, const NodeRegistry& registry, std::ostream& out);
void save_partition_file(const Partition& partition, const NodeRegistry& registry,
                         const std::filesystem::path& path);

/// Reads "node_id label" lines. Ids must already be known to the registry
/// when `require_known`; otherwise unknown ids extend it. Every registry
/// node must receive a label.
Partition load_partition(std::istream& in, NodeRegistry& registry, bool require_known = false);
Partition load_partition_file(const std::filesystem::path& path, NodeRegistry& registry,
                              bool require_known = false);

}  // namespace tmoga
