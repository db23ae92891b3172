#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tmoga {

/// Thrown when an input file cannot be parsed; carries the 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Bidirectional mapping between external node ids (as they appear in input
/// files) and dense 0-based indices. Shared across the snapshots of a
/// dynamic network so all of them live on one node universe.
class NodeRegistry {
public:
    /// Returns the index of `id`, registering it if unseen.
    int intern(const std::string& id);

    std::optional<int> find(const std::string& id) const;

    const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }

    int size() const { return static_cast<int>(names_.size()); }

private:
    std::unordered_map<std::string, int> index_;
    std::vector<std::string> names_;
};

/// One undirected simple graph. Immutable after construction: adjacency
/// lists are sorted, deduplicated and symmetric, with no self-loops.
class Snapshot {
public:
    Snapshot() = default;

    /// n isolated nodes.
    explicit Snapshot(int n) : adjacency_(static_cast<std::size_t>(n)) {}

    /// Builds from an edge list; duplicates and self-loops are dropped.
    /// Endpoints must lie in [0, n).
    static Snapshot from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return static_cast<int>(adjacency_.size()); }

    std::int64_t edge_count() const { return edge_count_; }

    std::span<const int> neighbors(int u) const { return adjacency_.at(static_cast<std::size_t>(u)); }

    int degree(int u) const { return static_cast<int>(adjacency_.at(static_cast<std::size_t>(u)).size()); }

    bool has_edge(int u, int v) const;

    /// Edges with both endpoints in `nodes` (duplicate entries in `nodes`
    /// are ignored). Throws std::out_of_range on an invalid index.
    std::int64_t internal_edge_count(std::span<const int> nodes) const;

private:
    std::vector<std::vector<int>> adjacency_;
    std::int64_t edge_count_ = 0;
};

/// Ordered sequence of snapshots over one shared node universe.
class DynamicNetwork {
public:
    DynamicNetwork(std::vector<Snapshot> snapshots, NodeRegistry registry);

    int snapshot_count() const { return static_cast<int>(snapshots_.size()); }

    const Snapshot& snapshot(int t) const { return snapshots_.at(static_cast<std::size_t>(t)); }

    int node_count() const { return registry_.size(); }

    const NodeRegistry& registry() const { return registry_; }

private:
    std::vector<Snapshot> snapshots_;
    NodeRegistry registry_;
};

/// Parses an edge list ("u v" per line, '#' starts a comment). Unknown ids
/// extend the registry; the returned snapshot spans the registry as it
/// stands after the parse. Self-loops and duplicate edges are dropped.
Snapshot load_edge_list(std::istream& in, NodeRegistry& registry);

/// Loads one snapshot per file, in the given order, onto a shared node
/// universe; nodes absent from a file remain as isolated nodes. When
/// `strict`, files whose id sets differ from the union universe are
/// rejected. `registry` may be pre-seeded (e.g. from ground-truth files)
/// to pin the universe.
DynamicNetwork load_dynamic(const std::vector<std::filesystem::path>& files,
                            NodeRegistry registry = {},
                            bool strict = false);

/// Lists `*.edges` files of a directory in lexicographic filename order.
/// Note the order is textual: "10.edges" sorts before "2.edges"; writers
/// zero-pad time indices.
std::vector<std::filesystem::path> list_snapshot_files(const std::filesystem::path& dir,
                                                       const std::string& extension = ".edges");

/// Canonical serialization: one "u v" line per edge, u-index ascending,
/// sorted unique pairs, external ids from the registry.
void serialize_snapshot(const Snapshot& snapshot, const NodeRegistry& registry, std::ostream& out);

}  // namespace tmoga
