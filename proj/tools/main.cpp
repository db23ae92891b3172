// tmoga command line: benchmark generation, dynamic community detection,
// partition evaluation, initialization comparison and the numeric
// verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tmoga/benchgen.hpp"
#include "tmoga/graph.hpp"
#include "tmoga/infotheory.hpp"
#include "tmoga/metrics.hpp"
#include "tmoga/pipeline.hpp"
#include "tmoga/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tmoga;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // verification / acceptance failure
constexpr int kExitUsage = 2;     // bad flags or semantic configuration errors
constexpr int kExitIo = 3;        // unreadable/unwritable/ill-formed files

struct DetectFlags {
    std::string input_dir;
    std::string truth_dir;
    std::string output_dir = "out";
    std::string variant = "tmoga";
    std::string init = "feature-transfer";
    std::string trace_dir;
    std::string feature_dump_dir;
    std::string config_file;
    bool sde = false;
    bool ci = false;
    GAParams params;
};

std::vector<fs::path> truth_files(const fs::path& dir) { return list_snapshot_files(dir, ".truth"); }

// Ground-truth files pin the node universe; snapshots are loaded on top of
// it so isolated nodes survive the round trip.
std::pair<DynamicNetwork, std::vector<Partition>> load_network_with_truth(const fs::path& snapshot_dir,
                                                                          const fs::path& truth_dir) {
    NodeRegistry registry;
    std::vector<std::vector<int>> raw_truths;
    for (const auto& file : truth_files(truth_dir)) {
        raw_truths.push_back(load_partition_file(file, registry).labels());
    }
    if (raw_truths.empty()) throw std::runtime_error("no .truth files in " + truth_dir.string());

    DynamicNetwork network = load_dynamic(list_snapshot_files(snapshot_dir), std::move(registry));
    if (static_cast<int>(raw_truths.size()) != network.snapshot_count()) {
        throw std::invalid_argument("truth file count differs from snapshot count");
    }
    std::vector<Partition> truths;
    for (auto& labels : raw_truths) {
        labels.resize(static_cast<std::size_t>(network.node_count()), -1);
        for (int label : labels) {
            if (label < 0) throw std::runtime_error("truth does not cover the full node universe");
        }
        truths.emplace_back(labels);
    }
    return {std::move(network), std::move(truths)};
}

void apply_config_file(const DetectFlags& flags, const CLI::App* cmd, GAParams& params) {
    if (flags.config_file.empty()) return;
    std::ifstream in(flags.config_file);
    if (!in) throw std::runtime_error("cannot open config " + flags.config_file);
    json config;
    try {
        in >> config;
    } catch (const json::exception& e) {
        throw std::runtime_error("invalid config JSON: " + std::string(e.what()));
    }
    auto take = [&](const char* flag, const char* key, auto member) {
        if (cmd->count(flag) == 0 && config.contains(key)) config.at(key).get_to(params.*member);
    };
    take("--population", "population", &GAParams::population_size);
    take("--generations", "generations", &GAParams::generations);
    take("--cid-threshold", "cid_threshold", &GAParams::cid_threshold);
    take("--max-depth", "max_depth", &GAParams::max_depth);
    take("--tp", "transfer_probability", &GAParams::transfer_probability);
    take("--cp", "crossover_probability", &GAParams::crossover_probability);
    take("--mp", "mutation_probability", &GAParams::mutation_probability);
    take("--seed", "seed", &GAParams::seed);
    take("--workers", "workers", &GAParams::workers);
}

int cmd_generate(const std::string& model, int z, std::uint64_t seed, const std::string& out,
                 EventParams event_params) {
    GroundTruthSequence sequence = [&] {
        if (model == "synfix") return gen_synfix(z, seed);
        if (model == "synvar") return gen_synvar(z, seed);
        return gen_events(event_model_from_string(model), event_params, seed);
    }();

    json params;
    if (model == "synfix" || model == "synvar") {
        params = json{{"z", z}};
    } else {
        params = json{{"nodes", event_params.nodes},
                      {"snapshots", event_params.snapshots},
                      {"average_degree", event_params.average_degree},
                      {"max_degree", event_params.max_degree},
                      {"mixing", event_params.mixing},
                      {"min_community", event_params.min_community},
                      {"max_community", event_params.max_community},
                      {"reassign_probability", event_params.reassign_probability}};
    }
    write_ground_truth_sequence(sequence, model, params.dump(), seed, out);
    std::cout << "wrote " << sequence.network.snapshot_count() << " snapshots ("
              << sequence.network.node_count() << " nodes) to " << out << "\n";
    return kExitOk;
}

int cmd_detect(const DetectFlags& flags) {
    GAParams params = flags.params;
    if (flags.variant == "tmoga2") {
        params.snapshot_cost = SnapshotCost::community_score;
        params.pareto_selector = ParetoSelector::modularity;
    } else if (flags.variant != "tmoga") {
        throw std::invalid_argument("unknown variant: " + flags.variant);
    }
    if (flags.sde) params.density_estimator = DensityEstimator::shift_based;
    if (flags.init == "label-prop") {
        params.init = InitStrategy::label_propagation;
    } else if (flags.init == "random") {
        params.init = InitStrategy::random_init;
    } else if (flags.init != "feature-transfer") {
        throw std::invalid_argument("unknown init strategy: " + flags.init);
    }
    params.validate();

    std::optional<DynamicNetwork> network;
    std::vector<Partition> truths;
    if (!flags.truth_dir.empty()) {
        auto [net, loaded] = load_network_with_truth(flags.input_dir, flags.truth_dir);
        network.emplace(std::move(net));
        truths = std::move(loaded);
    } else {
        network.emplace(load_dynamic(list_snapshot_files(flags.input_dir)));
    }

    RunOptions options;
    if (!truths.empty()) options.truths = &truths;
    if (!flags.trace_dir.empty()) options.trace_dir = flags.trace_dir;
    if (!flags.feature_dump_dir.empty()) options.feature_dump_dir = flags.feature_dump_dir;

    const RunReport report = run_tmoga(*network, params, options);
    write_run_report(report, network->registry(), flags.output_dir);

    std::cout << "t,modularity,nmi_previous,nmi_truth,time_sec,feature_transfer_sec\n";
    for (const auto& snapshot : report.snapshots) {
        std::cout << snapshot.time << ',' << snapshot.modularity_value << ',';
        if (snapshot.nmi_previous) std::cout << *snapshot.nmi_previous;
        std::cout << ',';
        if (snapshot.nmi_truth) std::cout << *snapshot.nmi_truth;
        std::cout << ',' << snapshot.wall_time_sec << ',' << snapshot.feature_transfer_sec << "\n";
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& partitions_dir, const std::string& truth_dir,
                 const std::string& snapshots_dir, const std::string& out_dir) {
    if (truth_dir.empty() && snapshots_dir.empty()) {
        throw std::invalid_argument("evaluate needs --truth and/or --snapshots");
    }
    const auto partition_files = list_snapshot_files(partitions_dir, ".labels");
    if (partition_files.empty()) throw std::runtime_error("no .labels files in " + partitions_dir);

    std::vector<fs::path> truths;
    if (!truth_dir.empty()) {
        truths = truth_files(truth_dir);
        if (truths.size() != partition_files.size()) {
            throw std::invalid_argument("partition/truth file counts differ");
        }
    }
    std::vector<fs::path> snapshots;
    if (!snapshots_dir.empty()) {
        snapshots = list_snapshot_files(snapshots_dir);
        if (snapshots.size() != partition_files.size()) {
            throw std::invalid_argument("partition/snapshot file counts differ");
        }
    }

    json rows = json::array();
    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "metrics.csv");
    if (!csv) throw std::runtime_error("cannot write metrics.csv");
    csv << "t,partition_file,nmi_truth,modularity\n";
    for (std::size_t i = 0; i < partition_files.size(); ++i) {
        NodeRegistry registry;
        std::optional<Partition> truth;
        if (!truths.empty()) truth.emplace(load_partition_file(truths[i], registry));
        const Partition partition = load_partition_file(partition_files[i], registry, !truths.empty());

        json row{{"t", i + 1}, {"partition_file", partition_files[i].filename().string()}};
        csv << (i + 1) << ',' << partition_files[i].filename().string() << ',';
        if (truth) {
            const double value = nmi(partition, *truth);
            row["nmi_truth"] = value;
            csv << value;
        }
        csv << ',';
        if (!snapshots.empty()) {
            const int before = registry.size();
            std::ifstream in(snapshots[i]);
            if (!in) throw std::runtime_error("cannot open " + snapshots[i].string());
            const Snapshot snapshot = load_edge_list(in, registry);
            if (registry.size() != before) {
                throw std::invalid_argument(snapshots[i].string() + " mentions unlabeled nodes");
            }
            const double q = modularity(snapshot, partition);
            row["modularity"] = q;
            csv << q;
        }
        csv << "\n";
        rows.push_back(std::move(row));
    }

    std::ofstream jout(fs::path(out_dir) / "metrics.json");
    jout << json{{"schema_version", 1}, {"rows", rows}}.dump(2) << "\n";
    std::cout << "evaluated " << partition_files.size() << " partitions into " << out_dir << "\n";
    return kExitOk;
}

int cmd_init_compare(const std::string& input_dir, const std::string& truth_dir, std::uint64_t seed,
                     int solutions, int top_k, const GAParams& params, const std::string& out_file) {
    auto [network, truths] = load_network_with_truth(input_dir, truth_dir);
    const InitComparison table = compare_initializations(network, truths, params, seed, solutions, top_k);

    std::ofstream out(out_file);
    if (!out) throw std::runtime_error("cannot write " + out_file);
    out << "strategy";
    for (int t = 1; t <= network.snapshot_count(); ++t) out << ",t" << t;
    out << "\n";
    for (std::size_t s = 0; s < table.strategies.size(); ++s) {
        out << table.strategies[s];
        for (double value : table.mean_top_nmi[s]) out << ',' << value;
        out << "\n";
    }
    std::cout << "wrote " << out_file << "\n";
    return kExitOk;
}

int cmd_verify(int trials, std::uint64_t seed, bool inject_fault) {
    const bool thm1 = verify_thm1_exhaustive(6);
    const VerificationSummary summary = run_theorem_trials(trials, seed, inject_fault);

    auto line = [](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS  " : "FAIL  ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
    };
    char buffer[160];
    line("entropy-contraction exhaustive n<=6", thm1, "");
    std::snprintf(buffer, sizeof(buffer), "min %.3e, median %.3e", summary.thm3_min_gap,
                  summary.thm3_median_gap);
    line("compression gap >= 0", summary.thm3_min_gap >= -1e-9, buffer);
    std::snprintf(buffer, sizeof(buffer), "max |gap - kl| %.3e", summary.max_kl_mismatch);
    line("compression gap equals leftover divergence", summary.max_kl_mismatch <= 1e-9, buffer);
    std::snprintf(buffer, sizeof(buffer), "min %.3e, median %.3e", summary.thm4_min_gap,
                  summary.thm4_median_gap);
    line("similarity gap >= 0", summary.thm4_min_gap >= -1e-9, buffer);
    std::snprintf(buffer, sizeof(buffer), "%d/%d trials", summary.trials - summary.failures, summary.trials);
    line("all randomized trials", summary.failures == 0 && thm1, buffer);

    return (summary.failures == 0 && thm1) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-enhanced multi-objective genetic detection of dynamic communities"};
    app.require_subcommand(1);

    // generate
    std::string gen_model;
    int gen_z = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "data";
    EventParams event_params;
    auto* generate = app.add_subcommand("generate", "generate a ground-truthed dynamic benchmark");
    generate->add_option("model", gen_model,
                         "synfix | synvar | birth-death | expand-contract | intermittent | merge-split")
        ->required();
    generate->add_option("--z", gen_z, "inter-community edges per node (synfix/synvar)");
    generate->add_option("--seed", gen_seed, "generator seed");
    generate->add_option("-o,--out", gen_out, "output directory");
    generate->add_option("--nodes", event_params.nodes, "node count (event models)");
    generate->add_option("--snapshots", event_params.snapshots, "snapshot count (event models)");
    generate->add_option("--avg-degree", event_params.average_degree, "average degree (event models)");
    generate->add_option("--max-degree", event_params.max_degree, "maximum degree (event models)");
    generate->add_option("--mixing", event_params.mixing, "inter-community degree fraction (event models)");
    generate->add_option("--min-community", event_params.min_community, "minimum community size");
    generate->add_option("--max-community", event_params.max_community, "maximum community size");
    generate->add_option("--reassign-p", event_params.reassign_probability,
                         "per-step node reassignment probability");

    // detect
    DetectFlags detect;
    auto* detect_cmd = app.add_subcommand("detect", "run detection over a snapshot directory");
    detect_cmd->add_option("-i,--input", detect.input_dir, "directory of .edges files")->required();
    detect_cmd->add_option("--truth-dir", detect.truth_dir, "directory of .truth files (adds NMI-to-truth)");
    detect_cmd->add_option("-o,--out", detect.output_dir, "output directory");
    detect_cmd->add_option("--population", detect.params.population_size, "population size");
    detect_cmd->add_option("--generations", detect.params.generations, "generations per snapshot");
    detect_cmd->add_option("--cid-threshold", detect.params.cid_threshold, "feature density threshold");
    detect_cmd->add_option("--max-depth", detect.params.max_depth, "feature size cap");
    detect_cmd->add_option("--tp", detect.params.transfer_probability, "transfer probability");
    detect_cmd->add_option("--cp", detect.params.crossover_probability, "crossover probability");
    detect_cmd->add_option("--mp", detect.params.mutation_probability, "mutation probability");
    detect_cmd->add_option("--seed", detect.params.seed, "run seed");
    detect_cmd->add_option("--workers", detect.params.workers, "objective evaluation threads");
    detect_cmd->add_option("--variant", detect.variant, "tmoga | tmoga2");
    detect_cmd->add_flag("--sde", detect.sde, "shift-based crowding density");
    detect_cmd->add_option("--init", detect.init, "feature-transfer | label-prop | random");
    detect_cmd->add_option("--trace", detect.trace_dir, "write per-generation CSV traces here");
    detect_cmd->add_option("--dump-features", detect.feature_dump_dir,
                           "write transferred cliques here, one per line");
    detect_cmd->add_option("--config", detect.config_file, "JSON config file (flags take precedence)");
    detect_cmd->add_flag("--ci", detect.ci, "require an explicit --seed");

    // evaluate
    std::string eval_partitions, eval_truth, eval_snapshots, eval_out = "eval";
    auto* evaluate = app.add_subcommand("evaluate", "score stored partitions");
    evaluate->add_option("--partitions", eval_partitions, "directory of .labels files")->required();
    evaluate->add_option("--truth", eval_truth, "directory of .truth files");
    evaluate->add_option("--snapshots", eval_snapshots, "directory of .edges files");
    evaluate->add_option("-o,--out", eval_out, "output directory");

    // init-compare
    std::string ic_input, ic_truth, ic_out = "init_compare.csv";
    std::uint64_t ic_seed = 1;
    int ic_solutions = 200;
    int ic_top = 20;
    GAParams ic_params;
    auto* init_compare = app.add_subcommand("init-compare", "compare initialization strategies");
    init_compare->add_option("-i,--input", ic_input, "directory of .edges files")->required();
    init_compare->add_option("--truth", ic_truth, "directory of .truth files")->required();
    init_compare->add_option("--seed", ic_seed, "base seed");
    init_compare->add_option("--solutions", ic_solutions, "initial solutions per strategy");
    init_compare->add_option("--top", ic_top, "ranked solutions to average");
    init_compare->add_option("--tp", ic_params.transfer_probability, "transfer probability");
    init_compare->add_option("--cid-threshold", ic_params.cid_threshold, "feature density threshold");
    init_compare->add_option("--max-depth", ic_params.max_depth, "feature size cap");
    init_compare->add_option("-o,--out", ic_out, "output CSV");

    // verify
    int verify_trials = 1000;
    std::uint64_t verify_seed = 1;
    bool verify_fault = false;
    auto* verify = app.add_subcommand("verify", "numeric verification of the analysis framework");
    verify->add_option("--trials", verify_trials, "randomized instances");
    verify->add_option("--seed", verify_seed, "verification seed");
    verify->add_flag("--inject-fault", verify_fault, "negative control: corrupt one trial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen_model, gen_z, gen_seed, gen_out, event_params);
        if (detect_cmd->parsed()) {
            if (detect.ci && detect_cmd->count("--seed") == 0) {
                std::cerr << "error: --ci requires an explicit --seed\n";
                return kExitUsage;
            }
            apply_config_file(detect, detect_cmd, detect.params);
            return cmd_detect(detect);
        }
        if (evaluate->parsed()) return cmd_evaluate(eval_partitions, eval_truth, eval_snapshots, eval_out);
        if (init_compare->parsed()) {
            return cmd_init_compare(ic_input, ic_truth, ic_seed, ic_solutions, ic_top, ic_params, ic_out);
        }
        if (verify->parsed()) return cmd_verify(verify_trials, verify_seed, verify_fault);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
