#include "tmoga/report_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace tmoga {

namespace {

using nlohmann::json;

std::string to_string(SnapshotCost cost) {
    return cost == SnapshotCost::modularity ? "modularity" : "community_score";
}
std::string to_string(ParetoSelector selector) {
    return selector == ParetoSelector::modularity ? "modularity" : "community_score";
}
std::string to_string(DensityEstimator estimator) {
    return estimator == DensityEstimator::standard ? "standard" : "shift_based";
}
std::string to_string(InitStrategy init) {
    switch (init) {
        case InitStrategy::feature_transfer: return "feature_transfer";
        case InitStrategy::label_propagation: return "label_propagation";
        case InitStrategy::random_init: return "random";
    }
    return "unknown";
}

json params_to_json(const GAParams& params) {
    return json{{"population_size", params.population_size},
                {"generations", params.generations},
                {"crossover_probability", params.crossover_probability},
                {"mutation_probability", params.mutation_probability},
                {"cid_threshold", params.cid_threshold},
                {"max_depth", params.max_depth},
                {"transfer_probability", params.transfer_probability},
                {"seed", params.seed},
                {"density_estimator", to_string(params.density_estimator)},
                {"snapshot_cost", to_string(params.snapshot_cost)},
                {"pareto_selector", to_string(params.pareto_selector)},
                {"init", to_string(params.init)},
                {"workers", params.workers}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

std::string snapshot_stem(int time) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "t%02d", time);
    return buffer;
}

std::string run_report_to_json(const RunReport& report) {
    json doc;
    doc["schema_version"] = 1;
    doc["params"] = params_to_json(report.params);
    doc["seed"] = report.params.seed;
    doc["total_time_sec"] = report.total_time_sec;
    doc["snapshots"] = json::array();
    for (const auto& snapshot : report.snapshots) {
        json entry{{"t", snapshot.time},
                   {"partition_file", snapshot_stem(snapshot.time) + ".labels"},
                   {"community_count", snapshot.community_count},
                   {"modularity", snapshot.modularity_value},
                   {"community_score", snapshot.community_score_value},
                   {"wall_time_sec", snapshot.wall_time_sec},
                   {"feature_transfer_sec", snapshot.feature_transfer_sec},
                   {"pareto_front", json{{"csv", "pareto_" + snapshot_stem(snapshot.time) + ".csv"},
                                         {"size", snapshot.front.size()}}}};
        entry["nmi_previous"] = snapshot.nmi_previous ? json(*snapshot.nmi_previous) : json(nullptr);
        if (snapshot.nmi_truth) entry["nmi_truth"] = *snapshot.nmi_truth;
        doc["snapshots"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

void write_run_report(const RunReport& report, const NodeRegistry& registry,
                      const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    write_text_file(directory / "report.json", run_report_to_json(report));

    for (const auto& snapshot : report.snapshots) {
        const std::string stem = snapshot_stem(snapshot.time);
        save_partition_file(snapshot.chosen(), registry, directory / (stem + ".labels"));

        const std::filesystem::path front_dir = directory / ("front_" + stem);
        std::filesystem::create_directories(front_dir);
        std::ofstream csv(directory / ("pareto_" + stem + ".csv"));
        if (!csv) throw std::runtime_error("cannot write pareto CSV");
        csv << "index,snapshot_cost,temporal_cost,partition_file\n";
        for (std::size_t i = 0; i < snapshot.front.size(); ++i) {
            const auto& entry = snapshot.front[i];
            char name[32];
            std::snprintf(name, sizeof(name), "sol_%03zu.labels", i);
            save_partition_file(Partition(entry.labels), registry, front_dir / name);
            csv << i << ',' << entry.objectives[0] << ',';
            if (entry.objectives.size() > 1) csv << entry.objectives[1];
            csv << ',' << ("front_" + stem) << '/' << name << '\n';
        }
    }
}

void write_ground_truth_sequence(const GroundTruthSequence& sequence, const std::string& model_name,
                                 const std::string& params_json, std::uint64_t seed,
                                 const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);
    const auto& registry = sequence.network.registry();

    json manifest;
    manifest["schema_version"] = 1;
    manifest["model"] = model_name;
    manifest["seed"] = seed;
    manifest["params"] = json::parse(params_json.empty() ? "{}" : params_json);
    manifest["snapshots"] = sequence.network.snapshot_count();
    manifest["nodes"] = sequence.network.node_count();
    manifest["files"] = json::array();
    manifest["community_counts"] = json::array();

    for (int t = 0; t < sequence.network.snapshot_count(); ++t) {
        const std::string stem = snapshot_stem(t + 1);
        {
            std::ofstream out(directory / (stem + ".edges"));
            if (!out) throw std::runtime_error("cannot write edges file");
            serialize_snapshot(sequence.network.snapshot(t), registry, out);
        }
        save_partition_file(sequence.truths[static_cast<std::size_t>(t)], registry,
                            directory / (stem + ".truth"));
        manifest["files"].push_back(json{{"edges", stem + ".edges"}, {"truth", stem + ".truth"}});
        manifest["community_counts"].push_back(
            sequence.truths[static_cast<std::size_t>(t)].community_count());
    }

    json events = json::array();
    for (const auto& event : sequence.events) {
        events.push_back(json{{"t", event.time + 1},
                              {"kind", event.kind},
                              {"communities", event.communities},
                              {"sizes", event.sizes}});
    }
    write_text_file(directory / "event_log.json", events.dump(2) + "\n");
    write_text_file(directory / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace tmoga
