#include "tmoga/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace tmoga {

int NodeRegistry::intern(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    const int idx = static_cast<int>(names_.size());
    index_.emplace(id, idx);
    names_.push_back(id);
    return idx;
}

std::optional<int> NodeRegistry::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Snapshot Snapshot::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Snapshot s(n);
    std::set<std::pair<int, int>> unique;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("edge endpoint out of range");
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        unique.emplace(u, v);
    }
    for (auto [u, v] : unique) {
        s.adjacency_[static_cast<std::size_t>(u)].push_back(v);
        s.adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& adj : s.adjacency_) std::sort(adj.begin(), adj.end());
    s.edge_count_ = static_cast<std::int64_t>(unique.size());
    return s;
}

bool Snapshot::has_edge(int u, int v) const {
    const auto& adj = adjacency_.at(static_cast<std::size_t>(u));
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::int64_t Snapshot::internal_edge_count(std::span<const int> nodes) const {
    std::vector<char> member(adjacency_.size(), 0);
    for (int u : nodes) {
        if (u < 0 || u >= node_count()) throw std::out_of_range("node index out of range");
        member[static_cast<std::size_t>(u)] = 1;
    }
    std::int64_t count = 0;
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        if (!member[u]) continue;
        for (int v : adjacency_[u]) {
            if (v > static_cast<int>(u) && member[static_cast<std::size_t>(v)]) ++count;
        }
    }
    return count;
}

DynamicNetwork::DynamicNetwork(std::vector<Snapshot> snapshots, NodeRegistry registry)
    : snapshots_(std::move(snapshots)), registry_(std::move(registry)) {
    if (snapshots_.empty()) throw std::invalid_argument("dynamic network needs at least one snapshot");
    for (const auto& s : snapshots_) {
        if (s.node_count() != registry_.size()) {
            throw std::invalid_argument("snapshot node count differs from registry");
        }
    }
}

namespace {

// Splits a line into whitespace tokens, ignoring everything after '#'.
std::vector<std::string> tokenize(const std::string& line) {
    std::string text = line;
    if (auto pos = text.find('#'); pos != std::string::npos) text.resize(pos);
    std::istringstream stream(text);
    std::vector<std::string> tokens;
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

std::vector<std::pair<int, int>> parse_edges(std::istream& in, NodeRegistry& registry) {
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) {
            throw ParseError("expected two node ids, got " + std::to_string(tokens.size()) +
                                 " tokens at line " + std::to_string(lineno),
                             lineno);
        }
        const int u = registry.intern(tokens[0]);  // keep first-appearance order
        const int v = registry.intern(tokens[1]);
        edges.emplace_back(u, v);
    }
    return edges;
}

}  // namespace

Snapshot load_edge_list(std::istream& in, NodeRegistry& registry) {
    auto edges = parse_edges(in, registry);
    return Snapshot::from_edges(registry.size(), edges);
}

DynamicNetwork load_dynamic(const std::vector<std::filesystem::path>& files,
                            NodeRegistry registry,
                            bool strict) {
    if (files.empty()) throw std::invalid_argument("no snapshots");

    std::vector<std::vector<std::pair<int, int>>> per_file;
    per_file.reserve(files.size());
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path.string());
        try {
            per_file.push_back(parse_edges(in, registry));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what(), e.line());
        }
    }

    const int n = registry.size();
    if (strict) {
        for (std::size_t i = 0; i < per_file.size(); ++i) {
            std::vector<char> seen(static_cast<std::size_t>(n), 0);
            for (auto [u, v] : per_file[i]) {
                seen[static_cast<std::size_t>(u)] = 1;
                seen[static_cast<std::size_t>(v)] = 1;
            }
            if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
                throw std::runtime_error("strict mode: " + files[i].string() +
                                         " does not cover the full node universe");
            }
        }
    }

    std::vector<Snapshot> snapshots;
    snapshots.reserve(per_file.size());
    for (auto& edges : per_file) snapshots.push_back(Snapshot::from_edges(n, edges));
    return DynamicNetwork(std::move(snapshots), std::move(registry));
}

std::vector<std::filesystem::path> list_snapshot_files(const std::filesystem::path& dir,
                                                       const std::string& extension) {
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

void serialize_snapshot(const Snapshot& snapshot, const NodeRegistry& registry, std::ostream& out) {
    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(static_cast<std::size_t>(snapshot.edge_count()));
    for (int u = 0; u < snapshot.node_count(); ++u) {
        for (int v : snapshot.neighbors(u)) {
            if (v <= u) continue;
            auto pair = std::minmax(registry.name(u), registry.name(v));
            lines.emplace_back(pair.first, pair.second);
        }
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [a, b] : lines) out << a << ' ' << b << '\n';
}

}  // namespace tmoga
