#include "tmoga/partition.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace tmoga {

Partition::Partition(const std::vector<int>& raw_labels) {
    if (raw_labels.empty()) throw std::invalid_argument("partition needs at least one node");
    labels_.resize(raw_labels.size());
    std::unordered_map<int, int> remap;
    remap.reserve(raw_labels.size());
    for (std::size_t u = 0; u < raw_labels.size(); ++u) {
        auto [it, inserted] = remap.emplace(raw_labels[u], static_cast<int>(remap.size()));
        labels_[u] = it->second;
        if (inserted) communities_.emplace_back();
        communities_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(u));
    }
}

void save_partition(const Partition& partition, const NodeRegistry& registry, std::ostream& out) {
    if (partition.node_count() != registry.size()) {
        throw std::invalid_argument("partition does not cover the registry universe");
    }
    for (int u = 0; u < partition.node_count(); ++u) {
        out << registry.name(u) << ' ' << partition.label_of(u) << '\n';
    }
}

void save_partition_file(const Partition& partition, const NodeRegistry& registry,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    save_partition(partition, registry, out);
}

Partition load_partition(std::istream& in, NodeRegistry& registry, bool require_known) {
    std::unordered_map<int, int> label_by_node;
    std::unordered_map<std::string, int> label_ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = line;
        if (auto pos = text.find('#'); pos != std::string::npos) text.resize(pos);
        std::istringstream stream(text);
        std::string id, label;
        if (!(stream >> id)) continue;
        std::string extra;
        if (!(stream >> label) || (stream >> extra)) {
            throw ParseError("expected \"node_id label\" at line " + std::to_string(lineno), lineno);
        }
        int index;
        if (require_known) {
            auto found = registry.find(id);
            if (!found) throw ParseError("unknown node id '" + id + "' at line " + std::to_string(lineno), lineno);
            index = *found;
        } else {
            index = registry.intern(id);
        }
        auto [it, _] = label_ids.emplace(label, static_cast<int>(label_ids.size()));
        label_by_node[index] = it->second;
    }
    if (static_cast<int>(label_by_node.size()) != registry.size()) {
        throw std::runtime_error("partition file does not label every node of the universe");
    }
    std::vector<int> labels(static_cast<std::size_t>(registry.size()));
    for (auto [node, label] : label_by_node) labels[static_cast<std::size_t>(node)] = label;
    return Partition(labels);
}

Partition load_partition_file(const std::filesystem::path& path, NodeRegistry& registry, bool require_known) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load_partition(in, registry, require_known);
}

}  // namespace tmoga
