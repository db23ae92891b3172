#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tmoga/encoding.hpp"
#include "tmoga/graph.hpp"
#include "tmoga/rng.hpp"

namespace tmoga {

/// Objective values, all minimized: (-snapshot quality) alone on the first
/// snapshot, plus (-similarity to the previous result) afterwards.
using ObjectiveVector = std::vector<double>;

struct Individual {
    LocusGenotype genotype;
    ObjectiveVector objectives;
    std::vector<int> labels;  // decoded partition, cached at evaluation
    int rank = 0;             // Pareto rank, 1 = nondominated
    double crowding = 0.0;
};

enum class SnapshotCost { modularity, community_score };
enum class ParetoSelector { community_score, modularity };
enum class DensityEstimator { standard, shift_based };
enum class InitStrategy { feature_transfer, label_propagation, random_init };

struct GAParams {
    int population_size = 200;
    int generations = 100;
    double crossover_probability = 0.8;
    double mutation_probability = 0.2;
    double cid_threshold = 0.8;
    int max_depth = 5;
    double transfer_probability = 0.5;
    std::uint64_t seed = 1;
    DensityEstimator density_estimator = DensityEstimator::standard;
    SnapshotCost snapshot_cost = SnapshotCost::modularity;
    ParetoSelector pareto_selector = ParetoSelector::community_score;
    InitStrategy init = InitStrategy::feature_transfer;
    int workers = 1;

    /// Throws std::invalid_argument on out-of-range values. generations = 0
    /// is allowed as a diagnostic mode (initial population only).
    void validate() const;
};

/// Pareto dominance for minimization: a <= b componentwise and strictly
/// better somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Fast nondominated sort; returns 1-based ranks.
std::vector<int> nondominated_sort(const std::vector<ObjectiveVector>& objectives);

/// Crowding distances for one front. Fronts of one or two members are all
/// infinite; otherwise per-objective boundary members are infinite and
/// interior members accumulate normalized neighbor gaps. The shift-based
/// variant replaces each sorted neighbor's value by max(neighbor, self)
/// before taking gaps, making the contribution the forward gap only.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front,
                                      DensityEstimator estimator = DensityEstimator::standard);

/// Two independent draws (with replacement) weighted by inverse Pareto
/// rank. Returns indices into the population.
std::pair<int, int> select_pair(const std::vector<Individual>& population, Rng& rng);

/// Uniform crossover under an explicit mask: where mask is 1 the first
/// child copies the first parent, where 0 the genes swap. Applying the
/// same mask to the children recovers the parents.
std::pair<LocusGenotype, LocusGenotype> uniform_crossover_with_mask(const LocusGenotype& parent1,
                                                                    const LocusGenotype& parent2,
                                                                    const std::vector<char>& mask);

/// Uniform crossover with each mask bit drawn with success probability cp.
std::pair<LocusGenotype, LocusGenotype> uniform_crossover(const LocusGenotype& parent1,
                                                          const LocusGenotype& parent2,
                                                          double cp, Rng& rng);

/// Single-point variation: with probability mp, one uniformly chosen gene
/// is reset to a uniformly chosen neighbor (never self); isolated nodes
/// are left alone.
LocusGenotype mutate(const LocusGenotype& genotype, double mp, const Snapshot& snapshot, Rng& rng);

/// Objective evaluation of a decoded partition. Must be pure: it may be
/// invoked from worker threads.
using Evaluator = std::function<ObjectiveVector(const Partition&)>;

/// Observed after the initial evaluation (generation 0) and after each
/// survival step.
using GenerationObserver = std::function<void(int generation, const std::vector<Individual>&)>;

/// NSGA-II generational loop: per generation, population_size offspring
/// from weighted selection, uniform crossover and neighbor mutation; then
/// elitist rank/crowding truncation of the pooled parents and offspring.
/// Returns the final rank-1 set with duplicates (same decoded partition)
/// removed.
std::vector<Individual> evolve(std::vector<LocusGenotype> initial, const Snapshot& snapshot,
                               const Evaluator& evaluate, const GAParams& params, Rng& rng,
                               const GenerationObserver& observer = {});

}  // namespace tmoga
