#include "tmoga/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

#include "tmoga/cliques.hpp"
#include "tmoga/encoding.hpp"
#include "tmoga/metrics.hpp"
#include "tmoga/rng.hpp"
#include "tmoga/transfer.hpp"

namespace tmoga {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double snapshot_quality(SnapshotCost cost, const Snapshot& snapshot, const Partition& partition) {
    return cost == SnapshotCost::modularity ? modularity(snapshot, partition)
                                            : community_score(snapshot, partition);
}

std::vector<LocusGenotype> label_prop_population(const Snapshot& snapshot, int size, Rng& rng) {
    std::vector<LocusGenotype> population;
    population.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) population.push_back(label_propagation_genotype(snapshot, rng));
    return population;
}

std::vector<LocusGenotype> random_population(const Snapshot& snapshot, int size, Rng& rng) {
    std::vector<LocusGenotype> population;
    population.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) population.push_back(random_genotype(snapshot, rng));
    return population;
}

class TraceWriter {
public:
    TraceWriter(const std::filesystem::path& dir, int time) {
        if (dir.empty()) return;
        std::filesystem::create_directories(dir);
        char name[32];
        std::snprintf(name, sizeof(name), "trace_t%02d.csv", time);
        out_.open(dir / name);
        if (out_) out_ << "generation,best_snapshot_cost,best_temporal_cost,front_size\n";
    }

    void operator()(int generation, const std::vector<Individual>& population) {
        if (!out_) return;
        double best0 = std::numeric_limits<double>::infinity();
        double best1 = std::numeric_limits<double>::infinity();
        int front_size = 0;
        bool two_objectives = false;
        for (const auto& individual : population) {
            best0 = std::min(best0, individual.objectives[0]);
            if (individual.objectives.size() > 1) {
                two_objectives = true;
                best1 = std::min(best1, individual.objectives[1]);
            }
            if (individual.rank == 1) ++front_size;
        }
        out_ << generation << ',' << best0 << ',';
        if (two_objectives) out_ << best1;
        out_ << ',' << front_size << '\n';
    }

    bool enabled() const { return out_.is_open(); }

private:
    std::ofstream out_;
};

}  // namespace

Partition select_final(const std::vector<Individual>& front, const Snapshot& snapshot,
                       ParetoSelector selector) {
    if (front.empty()) throw std::invalid_argument("empty Pareto front");

    struct Scored {
        Partition partition;
        double primary;
        double q;
    };
    std::optional<Scored> best;
    for (const auto& individual : front) {
        Partition partition = decode(snapshot, individual.genotype);
        const double q = modularity(snapshot, partition);
        const double primary =
            selector == ParetoSelector::community_score ? community_score(snapshot, partition) : q;
        Scored candidate{std::move(partition), primary, q};
        if (!best) {
            best.emplace(std::move(candidate));
            continue;
        }
        bool better = false;
        if (candidate.primary != best->primary) {
            better = candidate.primary > best->primary;
        } else if (candidate.q != best->q) {
            better = candidate.q > best->q;
        } else if (candidate.partition.community_count() != best->partition.community_count()) {
            better = candidate.partition.community_count() < best->partition.community_count();
        } else {
            better = candidate.partition.labels() < best->partition.labels();
        }
        if (better) best.emplace(std::move(candidate));
    }
    return best->partition;
}

RunReport run_tmoga(const DynamicNetwork& network, const GAParams& params, const RunOptions& options) {
    params.validate();
    if (options.truths && static_cast<int>(options.truths->size()) != network.snapshot_count()) {
        throw std::invalid_argument("ground truth count differs from snapshot count");
    }

    const auto run_start = Clock::now();
    Rng rng(params.seed);
    RunReport report;
    report.params = params;

    std::optional<Partition> previous;
    for (int t = 0; t < network.snapshot_count(); ++t) {
        const auto snapshot_start = Clock::now();
        const Snapshot& snapshot = network.snapshot(t);

        double feature_transfer_sec = 0.0;
        std::vector<LocusGenotype> initial;
        if (t == 0 || params.init == InitStrategy::label_propagation) {
            initial = label_prop_population(snapshot, params.population_size, rng);
        } else if (params.init == InitStrategy::random_init) {
            initial = random_population(snapshot, params.population_size, rng);
        } else {
            const auto transfer_start = Clock::now();
            const CliqueSet cliques = extract_all(network.snapshot(t - 1), *previous,
                                                  params.cid_threshold, params.max_depth, t - 1);
            initial = migrate_population(snapshot, cliques, params.transfer_probability,
                                         params.population_size, rng);
            feature_transfer_sec = seconds_since(transfer_start);
            if (!options.feature_dump_dir.empty()) {
                std::filesystem::create_directories(options.feature_dump_dir);
                char name[32];
                std::snprintf(name, sizeof(name), "features_t%02d.txt", t + 1);
                std::ofstream out(options.feature_dump_dir / name);
                if (out) dump_cliques(cliques, network.registry(), out);
            }
        }

        Evaluator evaluate;
        if (t == 0) {
            evaluate = [&](const Partition& partition) {
                return ObjectiveVector{-snapshot_quality(params.snapshot_cost, snapshot, partition)};
            };
        } else {
            const Partition& anchor = *previous;
            evaluate = [&, anchor](const Partition& partition) {
                return ObjectiveVector{-snapshot_quality(params.snapshot_cost, snapshot, partition),
                                       -nmi(partition, anchor)};
            };
        }

        TraceWriter trace(options.trace_dir, t + 1);
        GenerationObserver observer;
        if (trace.enabled()) observer = std::ref(trace);
        std::vector<Individual> front = evolve(std::move(initial), snapshot, evaluate, params, rng, observer);

        Partition chosen = select_final(front, snapshot, params.pareto_selector);

        SnapshotResult result;
        result.time = t + 1;
        result.chosen_labels = chosen.labels();
        result.community_count = chosen.community_count();
        result.modularity_value = modularity(snapshot, chosen);
        result.community_score_value = community_score(snapshot, chosen);
        if (previous) result.nmi_previous = nmi(chosen, *previous);
        if (options.truths) result.nmi_truth = nmi(chosen, (*options.truths)[static_cast<std::size_t>(t)]);
        result.feature_transfer_sec = feature_transfer_sec;
        result.front.reserve(front.size());
        for (auto& individual : front) {
            result.front.push_back(
                {individual.objectives, decode(snapshot, individual.genotype).labels()});
        }
        result.wall_time_sec = seconds_since(snapshot_start);
        report.snapshots.push_back(std::move(result));

        previous = std::move(chosen);
    }
    report.total_time_sec = seconds_since(run_start);
    return report;
}

InitComparison compare_initializations(const DynamicNetwork& network, const std::vector<Partition>& truths,
                                       const GAParams& params, std::uint64_t seed,
                                       int n_solutions, int top_k) {
    if (static_cast<int>(truths.size()) != network.snapshot_count()) {
        throw std::invalid_argument("ground truth required for every snapshot");
    }
    if (n_solutions < 1 || top_k < 1) throw std::invalid_argument("need at least one solution and one ranked entry");
    top_k = std::min(top_k, n_solutions);

    InitComparison table;
    table.strategies = {"random", "label_propagation", "naive_feature_transfer", "feature_transfer"};
    table.mean_top_nmi.assign(table.strategies.size(),
                              std::vector<double>(static_cast<std::size_t>(network.snapshot_count()), 0.0));

    for (int t = 0; t < network.snapshot_count(); ++t) {
        const Snapshot& snapshot = network.snapshot(t);
        CliqueSet cliques;
        if (t > 0) {
            cliques = extract_all(network.snapshot(t - 1), truths[static_cast<std::size_t>(t - 1)],
                                  params.cid_threshold, params.max_depth, t - 1);
        }

        auto mean_top = [&](const std::vector<LocusGenotype>& population) {
            std::vector<double> scores;
            scores.reserve(population.size());
            for (const auto& genotype : population) {
                scores.push_back(nmi(decode(snapshot, genotype), truths[static_cast<std::size_t>(t)]));
            }
            std::sort(scores.begin(), scores.end(), std::greater<>());
            double total = 0.0;
            for (int i = 0; i < top_k; ++i) total += scores[static_cast<std::size_t>(i)];
            return total / top_k;
        };

        // On the first snapshot there are no features to transfer: both
        // transfer strategies coincide with plain label propagation, so
        // they reuse its substream and its value.
        for (std::size_t s = 0; s < table.strategies.size(); ++s) {
            const std::size_t effective = (t == 0 && s >= 2) ? 1 : s;
            Rng strategy_rng(Rng::mix(seed, static_cast<std::uint64_t>(t), effective));
            std::vector<LocusGenotype> population;
            switch (effective) {
                case 0: population = random_population(snapshot, n_solutions, strategy_rng); break;
                case 1: population = label_prop_population(snapshot, n_solutions, strategy_rng); break;
                case 2:
                    population = migrate_population(snapshot, cliques, params.transfer_probability,
                                                    n_solutions, strategy_rng, 5, /*repair=*/false);
                    break;
                default:
                    population = migrate_population(snapshot, cliques, params.transfer_probability,
                                                    n_solutions, strategy_rng, 5, /*repair=*/true);
                    break;
            }
            table.mean_top_nmi[s][static_cast<std::size_t>(t)] = mean_top(population);
        }
    }
    return table;
}

}  // namespace tmoga
