#include "tmoga/moea.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace tmoga {

void GAParams::validate() const {
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (population_size < 1) throw std::invalid_argument("population_size must be >= 1");
    if (generations < 0) throw std::invalid_argument("generations must be >= 0");
    if (!probability(crossover_probability)) throw std::invalid_argument("crossover_probability outside [0, 1]");
    if (!probability(mutation_probability)) throw std::invalid_argument("mutation_probability outside [0, 1]");
    if (!probability(cid_threshold)) throw std::invalid_argument("cid_threshold outside [0, 1]");
    if (!probability(transfer_probability)) throw std::invalid_argument("transfer_probability outside [0, 1]");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("objective vectors of different length");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<int> nondominated_sort(const std::vector<ObjectiveVector>& objectives) {
    const std::size_t n = objectives.size();
    std::vector<int> ranks(n, 0);
    std::vector<int> dominated_count(n, 0);
    std::vector<std::vector<int>> dominates_list(n);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objectives[i], objectives[j])) {
                dominates_list[i].push_back(static_cast<int>(j));
                ++dominated_count[j];
            } else if (dominates(objectives[j], objectives[i])) {
                dominates_list[j].push_back(static_cast<int>(i));
                ++dominated_count[i];
            }
        }
    }

    std::vector<int> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_count[i] == 0) {
            ranks[i] = 1;
            current.push_back(static_cast<int>(i));
        }
    }
    int rank = 1;
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current) {
            for (int j : dominates_list[static_cast<std::size_t>(i)]) {
                if (--dominated_count[static_cast<std::size_t>(j)] == 0) {
                    ranks[static_cast<std::size_t>(j)] = rank + 1;
                    next.push_back(j);
                }
            }
        }
        ++rank;
        current = std::move(next);
    }
    return ranks;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front, DensityEstimator estimator) {
    const std::size_t n = front.size();
    if (n == 0) throw std::invalid_argument("empty front");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), kInf);
        return distance;
    }

    const std::size_t objectives = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < objectives; ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
        const double range = front[order.back()][m] - front[order.front()][m];
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        if (range <= 0.0) continue;
        for (std::size_t pos = 1; pos + 1 < n; ++pos) {
            const std::size_t i = order[pos];
            if (distance[i] == kInf) continue;
            const double self = front[i][m];
            double prev = front[order[pos - 1]][m];
            const double next = front[order[pos + 1]][m];
            // Shifted neighbors can never sit below the member itself.
            if (estimator == DensityEstimator::shift_based) prev = std::max(prev, self);
            distance[i] += (next - prev) / range;
        }
    }
    return distance;
}

std::pair<int, int> select_pair(const std::vector<Individual>& population, Rng& rng) {
    if (population.empty()) throw std::invalid_argument("empty population");
    std::vector<double> cumulative(population.size());
    double total = 0.0;
    for (std::size_t i = 0; i < population.size(); ++i) {
        total += 1.0 / static_cast<double>(population[i].rank);
        cumulative[i] = total;
    }
    auto draw = [&]() {
        const double u = rng.uniform01() * total;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        return static_cast<int>(std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), population.size() - 1));
    };
    const int first = draw();
    const int second = draw();
    return {first, second};
}

std::pair<LocusGenotype, LocusGenotype> uniform_crossover_with_mask(const LocusGenotype& parent1,
                                                                    const LocusGenotype& parent2,
                                                                    const std::vector<char>& mask) {
    if (parent1.size() != parent2.size() || mask.size() != parent1.genes.size()) {
        throw std::invalid_argument("genotype/mask length mismatch");
    }
    LocusGenotype child1 = parent1;
    LocusGenotype child2 = parent2;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) std::swap(child1.genes[i], child2.genes[i]);
    }
    return {std::move(child1), std::move(child2)};
}

std::pair<LocusGenotype, LocusGenotype> uniform_crossover(const LocusGenotype& parent1,
                                                          const LocusGenotype& parent2,
                                                          double cp, Rng& rng) {
    std::vector<char> mask(parent1.genes.size());
    for (auto& bit : mask) bit = rng.uniform01() < cp ? 1 : 0;
    return uniform_crossover_with_mask(parent1, parent2, mask);
}

LocusGenotype mutate(const LocusGenotype& genotype, double mp, const Snapshot& snapshot, Rng& rng) {
    if (mp < 0.0 || mp > 1.0) throw std::invalid_argument("mp outside [0, 1]");
    LocusGenotype result = genotype;
    if (result.size() == 0 || rng.uniform01() >= mp) return result;
    // single-point variation: one uniformly chosen gene is reset to a
    // uniformly chosen neighbor; isolated nodes are left alone
    const int u = rng.uniform_int(0, result.size() - 1);
    const auto nbrs = snapshot.neighbors(u);
    if (!nbrs.empty()) {
        result.genes[static_cast<std::size_t>(u)] =
            nbrs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(nbrs.size()) - 1))];
    }
    return result;
}

namespace {

void evaluate_range(std::vector<Individual>& population, std::size_t begin, std::size_t end,
                    const Snapshot& snapshot, const Evaluator& evaluate) {
    for (std::size_t i = begin; i < end; ++i) {
        Partition decoded = decode(snapshot, population[i].genotype);
        population[i].objectives = evaluate(decoded);
        population[i].labels = decoded.labels();
    }
}

// Pure per-individual evaluation; with several workers the population is
// chunked across threads and results land in fixed slots, so the outcome
// does not depend on the worker count.
void evaluate_population(std::vector<Individual>& population, const Snapshot& snapshot,
                         const Evaluator& evaluate, int workers) {
    const std::size_t n = population.size();
    if (workers <= 1 || n < 2) {
        evaluate_range(population, 0, n, snapshot, evaluate);
        return;
    }
    const std::size_t thread_count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(thread_count);
    const std::size_t chunk = (n + thread_count - 1) / thread_count;
    for (std::size_t t = 0; t < thread_count; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back([&, t, begin, end] {
            try {
                evaluate_range(population, begin, end, snapshot, evaluate);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& thread : threads) thread.join();
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

void assign_ranks(std::vector<Individual>& population) {
    std::vector<ObjectiveVector> objectives;
    objectives.reserve(population.size());
    for (const auto& individual : population) objectives.push_back(individual.objectives);
    const std::vector<int> ranks = nondominated_sort(objectives);
    for (std::size_t i = 0; i < population.size(); ++i) population[i].rank = ranks[i];
}

// Elitist truncation: whole fronts by ascending rank, the boundary front
// by descending crowding distance. Individuals repeating an already-kept
// decoded partition go to the back of the queue, so the surviving
// population holds as many distinct partitions as the pool offers.
std::vector<Individual> survive(std::vector<Individual> pool, std::size_t target, DensityEstimator estimator) {
    assign_ranks(pool);
    int max_rank = 0;
    for (const auto& individual : pool) max_rank = std::max(max_rank, individual.rank);

    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> fronts(static_cast<std::size_t>(max_rank));
    std::vector<int> duplicates;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (seen.insert(pool[i].labels).second) {
            fronts[static_cast<std::size_t>(pool[i].rank - 1)].push_back(static_cast<int>(i));
        } else {
            duplicates.push_back(static_cast<int>(i));
        }
    }

    std::vector<Individual> survivors;
    survivors.reserve(target);
    for (auto& front : fronts) {
        if (survivors.size() == target) break;
        if (front.empty()) continue;
        std::vector<ObjectiveVector> front_objectives;
        front_objectives.reserve(front.size());
        for (int i : front) front_objectives.push_back(pool[static_cast<std::size_t>(i)].objectives);
        const std::vector<double> crowding = crowding_distance(front_objectives, estimator);
        for (std::size_t pos = 0; pos < front.size(); ++pos) {
            pool[static_cast<std::size_t>(front[pos])].crowding = crowding[pos];
        }
        if (survivors.size() + front.size() <= target) {
            for (int i : front) survivors.push_back(std::move(pool[static_cast<std::size_t>(i)]));
        } else {
            std::stable_sort(front.begin(), front.end(), [&](int a, int b) {
                return pool[static_cast<std::size_t>(a)].crowding > pool[static_cast<std::size_t>(b)].crowding;
            });
            for (std::size_t pos = 0; survivors.size() < target; ++pos) {
                survivors.push_back(std::move(pool[static_cast<std::size_t>(front[pos])]));
            }
        }
    }
    // fill any remaining slots with duplicates, best ranks first
    std::stable_sort(duplicates.begin(), duplicates.end(), [&](int a, int b) {
        return pool[static_cast<std::size_t>(a)].rank < pool[static_cast<std::size_t>(b)].rank;
    });
    for (std::size_t pos = 0; survivors.size() < target && pos < duplicates.size(); ++pos) {
        survivors.push_back(std::move(pool[static_cast<std::size_t>(duplicates[pos])]));
    }
    return survivors;
}

}  // namespace

std::vector<Individual> evolve(std::vector<LocusGenotype> initial, const Snapshot& snapshot,
                               const Evaluator& evaluate, const GAParams& params, Rng& rng,
                               const GenerationObserver& observer) {
    params.validate();
    if (static_cast<int>(initial.size()) != params.population_size) {
        throw std::invalid_argument("initial population size differs from population_size");
    }

    std::vector<Individual> population;
    population.reserve(initial.size());
    for (auto& genotype : initial) population.push_back({std::move(genotype), {}, {}, 0, 0.0});
    evaluate_population(population, snapshot, evaluate, params.workers);
    assign_ranks(population);
    if (observer) observer(0, population);

    const std::size_t target = static_cast<std::size_t>(params.population_size);
    for (int generation = 1; generation <= params.generations; ++generation) {
        assign_ranks(population);
        std::vector<Individual> offspring;
        offspring.reserve(target + 1);
        while (offspring.size() < target) {
            const auto [a, b] = select_pair(population, rng);
            auto [child1, child2] =
                uniform_crossover(population[static_cast<std::size_t>(a)].genotype,
                                  population[static_cast<std::size_t>(b)].genotype,
                                  params.crossover_probability, rng);
            child1 = mutate(child1, params.mutation_probability, snapshot, rng);
            child2 = mutate(child2, params.mutation_probability, snapshot, rng);
            offspring.push_back({std::move(child1), {}, {}, 0, 0.0});
            offspring.push_back({std::move(child2), {}, {}, 0, 0.0});
        }
        offspring.resize(target);  // odd population sizes drop the extra child
        evaluate_population(offspring, snapshot, evaluate, params.workers);

        std::vector<Individual> pool = std::move(population);
        pool.reserve(2 * target);
        for (auto& individual : offspring) pool.push_back(std::move(individual));
        population = survive(std::move(pool), target, params.density_estimator);
        if (observer) observer(generation, population);
    }

    // Rank-1 set, deduplicated by decoded partition.
    assign_ranks(population);
    std::vector<Individual> front;
    std::set<std::vector<int>> seen;
    for (auto& individual : population) {
        if (individual.rank != 1) continue;
        if (seen.insert(individual.labels).second) front.push_back(std::move(individual));
    }
    return front;
}

}  // namespace tmoga
