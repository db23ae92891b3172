#include "tmoga/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "tmoga/rng.hpp"

namespace tmoga {

namespace {

NodeRegistry dense_registry(int n) {
    NodeRegistry registry;
    for (int u = 0; u < n; ++u) registry.intern(std::to_string(u));
    return registry;
}

// Girvan-Newman style block sampling: fixed within/between pair
// probabilities chosen so the expected degree is 16 with z edges leaving
// the community when communities have their nominal size.
Snapshot sample_blocks_fixed(const std::vector<int>& membership, double p_in, double p_out, Rng& rng) {
    const int n = static_cast<int>(membership.size());
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double p = membership[static_cast<std::size_t>(u)] == membership[static_cast<std::size_t>(v)]
                                 ? p_in
                                 : p_out;
            if (rng.uniform01() < p) edges.emplace_back(u, v);
        }
    }
    return Snapshot::from_edges(n, edges);
}

// Size-aware variant for networks whose communities change size: the
// within probability keeps the expected internal degree at (16 - z) for
// the community's current size, the between probability is symmetrized.
Snapshot sample_blocks_sized(const std::vector<int>& membership, int z, Rng& rng) {
    const int n = static_cast<int>(membership.size());
    std::map<int, int> sizes;
    for (int c : membership) ++sizes[c];

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        const int cu = membership[static_cast<std::size_t>(u)];
        const double out_u = static_cast<double>(z) / static_cast<double>(n - sizes[cu]);
        for (int v = u + 1; v < n; ++v) {
            const int cv = membership[static_cast<std::size_t>(v)];
            double p;
            if (cu == cv) {
                p = sizes[cu] > 1 ? (16.0 - z) / static_cast<double>(sizes[cu] - 1) : 0.0;
            } else {
                const double out_v = static_cast<double>(z) / static_cast<double>(n - sizes[cv]);
                p = 0.5 * (out_u + out_v);
            }
            if (rng.uniform01() < std::min(1.0, p)) edges.emplace_back(u, v);
        }
    }
    return Snapshot::from_edges(n, edges);
}

}  // namespace

GroundTruthSequence gen_synfix(int z, std::uint64_t seed) {
    if (z < 0 || z > 16) throw std::invalid_argument("z outside [0, 16]");
    constexpr int kNodes = 128;
    constexpr int kCommunities = 4;
    constexpr int kCommunitySize = 32;
    constexpr int kSnapshots = 10;
    constexpr int kMoversPerCommunity = 3;
    const double p_in = (16.0 - z) / (kCommunitySize - 1);
    const double p_out = static_cast<double>(z) / (kNodes - kCommunitySize);

    Rng rng(Rng::mix(seed, 0x53594e46));  // distinct stream per generator family
    std::vector<int> membership(kNodes);
    for (int u = 0; u < kNodes; ++u) membership[static_cast<std::size_t>(u)] = u / kCommunitySize;

    std::vector<Snapshot> snapshots;
    std::vector<Partition> truths;
    std::vector<EventRecord> events;
    for (int t = 0; t < kSnapshots; ++t) {
        if (t > 0) {
            // Pick this step's movers from the membership as it stood at
            // the start of the step, three per community.
            std::vector<std::vector<int>> members(kCommunities);
            for (int u = 0; u < kNodes; ++u) {
                members[static_cast<std::size_t>(membership[static_cast<std::size_t>(u)])].push_back(u);
            }
            std::vector<std::pair<int, int>> moves;  // node -> destination
            for (int c = 0; c < kCommunities; ++c) {
                auto& pool = members[static_cast<std::size_t>(c)];
                const int movers = std::min<int>(kMoversPerCommunity, static_cast<int>(pool.size()) - 1);
                for (int i = 0; i < movers; ++i) {
                    const int slot = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
                    const int node = pool[static_cast<std::size_t>(slot)];
                    pool.erase(pool.begin() + slot);
                    int destination = rng.uniform_int(0, kCommunities - 2);
                    if (destination >= c) ++destination;
                    moves.emplace_back(node, destination);
                }
            }
            for (auto [node, destination] : moves) membership[static_cast<std::size_t>(node)] = destination;
            events.push_back({t, "move", {0, 1, 2, 3}, {static_cast<int>(moves.size())}});
        }
        snapshots.push_back(sample_blocks_fixed(membership, p_in, p_out, rng));
        truths.emplace_back(membership);
    }
    return {DynamicNetwork(std::move(snapshots), dense_registry(kNodes)), std::move(truths), std::move(events)};
}

GroundTruthSequence gen_synvar(int z, std::uint64_t seed) {
    if (z < 0 || z > 16) throw std::invalid_argument("z outside [0, 16]");
    constexpr int kNodes = 256;
    constexpr int kOriginalCommunities = 4;
    constexpr int kSnapshots = 10;
    constexpr int kSplitPerCommunity = 8;

    Rng rng(Rng::mix(seed, 0x53594e56));
    std::vector<int> membership(kNodes);
    for (int u = 0; u < kNodes; ++u) membership[static_cast<std::size_t>(u)] = u / 64;

    // splits[i] records, for the split applied at snapshot i + 1, each
    // moved node with the community it came from.
    std::vector<std::vector<std::pair<int, int>>> splits;

    std::vector<Snapshot> snapshots;
    std::vector<Partition> truths;
    std::vector<EventRecord> events;
    for (int t = 0; t < kSnapshots; ++t) {
        if (t >= 1 && t <= 4) {
            const int new_community = kOriginalCommunities + static_cast<int>(splits.size());
            std::vector<std::pair<int, int>> moved;
            for (int c = 0; c < kOriginalCommunities; ++c) {
                std::vector<int> pool;
                for (int u = 0; u < kNodes; ++u) {
                    if (membership[static_cast<std::size_t>(u)] == c) pool.push_back(u);
                }
                for (int i = 0; i < kSplitPerCommunity; ++i) {
                    const int slot = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
                    const int node = pool[static_cast<std::size_t>(slot)];
                    pool.erase(pool.begin() + slot);
                    moved.emplace_back(node, c);
                    membership[static_cast<std::size_t>(node)] = new_community;
                }
            }
            events.push_back({t, "split", {new_community}, {static_cast<int>(moved.size())}});
            splits.push_back(std::move(moved));
        } else if (t >= 6) {
            // Replay the recorded splits backwards, most recent first.
            auto moved = std::move(splits.back());
            splits.pop_back();
            const int dissolved = kOriginalCommunities + static_cast<int>(splits.size());
            for (auto [node, origin] : moved) membership[static_cast<std::size_t>(node)] = origin;
            events.push_back({t, "merge", {dissolved}, {static_cast<int>(moved.size())}});
        }
        snapshots.push_back(sample_blocks_sized(membership, z, rng));
        truths.emplace_back(membership);
    }
    return {DynamicNetwork(std::move(snapshots), dense_registry(kNodes)), std::move(truths), std::move(events)};
}

namespace {

// Mutable community bookkeeping for the event generator.
struct CommunityState {
    std::vector<int> membership;       // node -> community id
    std::map<int, int> sizes;          // alive community id -> size
    int next_id = 0;

    std::vector<int> alive() const {
        std::vector<int> ids;
        ids.reserve(sizes.size());
        for (const auto& [id, size] : sizes) ids.push_back(id);
        return ids;
    }

    std::vector<int> members_of(int community) const {
        std::vector<int> nodes;
        for (int u = 0; u < static_cast<int>(membership.size()); ++u) {
            if (membership[static_cast<std::size_t>(u)] == community) nodes.push_back(u);
        }
        return nodes;
    }

    void move_node(int node, int destination) {
        const int source = membership[static_cast<std::size_t>(node)];
        if (source == destination) return;
        if (--sizes[source] == 0) sizes.erase(source);
        ++sizes[destination];
        membership[static_cast<std::size_t>(node)] = destination;
    }
};

// A node from a random community of size >= 2, excluding `excluded`, or -1.
int draw_donor(const CommunityState& state, int excluded, Rng& rng) {
    std::vector<int> eligible;
    for (int u = 0; u < static_cast<int>(state.membership.size()); ++u) {
        const int c = state.membership[static_cast<std::size_t>(u)];
        if (c != excluded && state.sizes.at(c) >= 2) eligible.push_back(u);
    }
    if (eligible.empty()) return -1;
    return rng.pick(eligible);
}

int pick_other(const std::vector<int>& ids, int exclude, Rng& rng) {
    std::vector<int> pool;
    for (int id : ids) {
        if (id != exclude) pool.push_back(id);
    }
    return pool.empty() ? exclude : rng.pick(pool);
}

Snapshot sample_event_snapshot(const CommunityState& state, const std::set<int>& hidden,
                               const EventParams& params, Rng& rng) {
    const int n = static_cast<int>(state.membership.size());
    const int low_degree = std::max(1, 2 * params.average_degree - params.max_degree);

    std::vector<double> internal_weight(static_cast<std::size_t>(n), 0.0);
    std::vector<double> external_weight(static_cast<std::size_t>(n), 0.0);
    std::map<int, double> community_internal_sum;
    double external_sum = 0.0;
    for (int u = 0; u < n; ++u) {
        if (hidden.count(state.membership[static_cast<std::size_t>(u)])) continue;
        const double degree = static_cast<double>(rng.uniform_int(low_degree, params.max_degree));
        internal_weight[static_cast<std::size_t>(u)] = (1.0 - params.mixing) * degree;
        external_weight[static_cast<std::size_t>(u)] = params.mixing * degree;
        community_internal_sum[state.membership[static_cast<std::size_t>(u)]] +=
            internal_weight[static_cast<std::size_t>(u)];
        external_sum += external_weight[static_cast<std::size_t>(u)];
    }

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        const int cu = state.membership[static_cast<std::size_t>(u)];
        if (hidden.count(cu)) continue;
        for (int v = u + 1; v < n; ++v) {
            const int cv = state.membership[static_cast<std::size_t>(v)];
            if (hidden.count(cv)) continue;
            double p;
            if (cu == cv) {
                const double total = community_internal_sum[cu];
                p = total > 0.0 ? internal_weight[static_cast<std::size_t>(u)] *
                                      internal_weight[static_cast<std::size_t>(v)] / total
                                : 0.0;
            } else {
                p = external_sum > 0.0 ? external_weight[static_cast<std::size_t>(u)] *
                                             external_weight[static_cast<std::size_t>(v)] / external_sum
                                       : 0.0;
            }
            if (rng.uniform01() < std::min(1.0, p)) edges.emplace_back(u, v);
        }
    }
    return Snapshot::from_edges(n, edges);
}

}  // namespace

GroundTruthSequence gen_events(EventModel model, const EventParams& params, std::uint64_t seed) {
    const int n = params.nodes;
    if (n < 1 || params.snapshots < 1) throw std::invalid_argument("need at least one node and snapshot");
    if (params.min_community < 1 || params.min_community > params.max_community) {
        throw std::invalid_argument("invalid community size bounds");
    }
    if (params.min_community > n) throw std::invalid_argument("min community size exceeds node count");

    // Community count feasible for sizes within [minc, maxc].
    int count = static_cast<int>(
        std::lround(static_cast<double>(n) / (0.5 * (params.min_community + params.max_community))));
    count = std::max(count, 1);
    while (count > 1 && static_cast<std::int64_t>(count) * params.min_community > n) --count;
    while (static_cast<std::int64_t>(count) * params.max_community < n) ++count;
    if (static_cast<std::int64_t>(count) * params.min_community > n) {
        throw std::invalid_argument("community size constraints are infeasible for the node count");
    }

    Rng rng(Rng::mix(seed, 0x4556454e, static_cast<std::uint64_t>(model)));

    std::vector<int> community_sizes(static_cast<std::size_t>(count), params.min_community);
    int remaining = n - count * params.min_community;
    while (remaining > 0) {
        const int c = rng.uniform_int(0, count - 1);
        if (community_sizes[static_cast<std::size_t>(c)] < params.max_community) {
            ++community_sizes[static_cast<std::size_t>(c)];
            --remaining;
        }
    }

    CommunityState state;
    state.membership.resize(static_cast<std::size_t>(n));
    std::vector<int> nodes(static_cast<std::size_t>(n));
    std::iota(nodes.begin(), nodes.end(), 0);
    rng.shuffle(nodes);
    {
        std::size_t cursor = 0;
        for (int c = 0; c < count; ++c) {
            for (int i = 0; i < community_sizes[static_cast<std::size_t>(c)]; ++i) {
                state.membership[static_cast<std::size_t>(nodes[cursor++])] = c;
            }
            state.sizes[c] = community_sizes[static_cast<std::size_t>(c)];
        }
        state.next_id = count;
    }

    std::set<int> hidden;
    std::vector<Snapshot> snapshots;
    std::vector<Partition> truths;
    std::vector<EventRecord> events;

    for (int t = 0; t < params.snapshots; ++t) {
        if (t > 0) {
            if (!hidden.empty()) {
                EventRecord restore{t, "restore", {hidden.begin(), hidden.end()}, {}};
                for (int id : restore.communities) restore.sizes.push_back(state.sizes.at(id));
                events.push_back(std::move(restore));
                hidden.clear();
            }

            // Membership churn: each node moves to a random other alive
            // community with the configured probability; communities never
            // drain below one member this way.
            const auto alive_before = state.alive();
            if (alive_before.size() > 1) {
                for (int u = 0; u < n; ++u) {
                    if (rng.uniform01() >= params.reassign_probability) continue;
                    const int source = state.membership[static_cast<std::size_t>(u)];
                    if (state.sizes.at(source) < 2) continue;
                    state.move_node(u, pick_other(alive_before, source, rng));
                }
            }

            switch (model) {
                case EventModel::birth_death: {
                    for (int b = 0; b < params.birth_count; ++b) {
                        const int target = rng.uniform_int(params.min_community, params.max_community);
                        const int id = state.next_id++;
                        state.sizes[id] = 0;
                        int taken = 0;
                        for (; taken < target; ++taken) {
                            const int donor = draw_donor(state, id, rng);
                            if (donor < 0) break;
                            state.move_node(donor, id);
                        }
                        if (taken == 0) {
                            state.sizes.erase(id);
                            continue;
                        }
                        events.push_back({t, "birth", {id}, {taken}});
                    }
                    for (int d = 0; d < params.death_count; ++d) {
                        auto ids = state.alive();
                        if (ids.size() <= 1) break;
                        const int victim = rng.pick(ids);
                        const auto members = state.members_of(victim);
                        events.push_back({t, "death", {victim}, {static_cast<int>(members.size())}});
                        for (int u : members) state.move_node(u, pick_other(ids, victim, rng));
                    }
                    break;
                }
                case EventModel::expand_contract: {
                    for (int e = 0; e < params.expand_count; ++e) {
                        auto ids = state.alive();
                        if (ids.size() <= 1) break;
                        const int target = rng.pick(ids);
                        const int gain = std::max(
                            1, static_cast<int>(std::lround(params.resize_rate * state.sizes.at(target))));
                        int gained = 0;
                        for (; gained < gain; ++gained) {
                            const int donor = draw_donor(state, target, rng);
                            if (donor < 0) break;
                            state.move_node(donor, target);
                        }
                        events.push_back({t, "expand", {target}, {gained}});
                    }
                    for (int c = 0; c < params.contract_count; ++c) {
                        auto ids = state.alive();
                        if (ids.size() <= 1) break;
                        const int target = rng.pick(ids);
                        const int loss = std::min(state.sizes.at(target) - 1,
                                                  std::max(1, static_cast<int>(std::lround(
                                                                  params.resize_rate * state.sizes.at(target)))));
                        auto members = state.members_of(target);
                        for (int i = 0; i < loss; ++i) {
                            const int slot = rng.uniform_int(0, static_cast<int>(members.size()) - 1);
                            const int node = members[static_cast<std::size_t>(slot)];
                            members.erase(members.begin() + slot);
                            state.move_node(node, pick_other(ids, target, rng));
                        }
                        events.push_back({t, "contract", {target}, {loss}});
                    }
                    break;
                }
                case EventModel::intermittent: {
                    auto ids = state.alive();
                    const int to_hide = std::max(
                        1, static_cast<int>(std::lround(params.hide_rate * static_cast<double>(ids.size()))));
                    EventRecord record{t, "hide", {}, {}};
                    for (int h = 0; h < to_hide && static_cast<int>(ids.size()) > 1; ++h) {
                        const int victim = rng.pick(ids);
                        ids.erase(std::find(ids.begin(), ids.end(), victim));
                        hidden.insert(victim);
                        record.communities.push_back(victim);
                        record.sizes.push_back(state.sizes.at(victim));
                    }
                    events.push_back(std::move(record));
                    break;
                }
                case EventModel::merge_split: {
                    for (int m = 0; m < params.merge_count; ++m) {
                        auto ids = state.alive();
                        if (ids.size() < 2) break;
                        const int keep = rng.pick(ids);
                        const int gone = pick_other(ids, keep, rng);
                        events.push_back({t, "merge", {keep, gone}, {state.sizes.at(keep), state.sizes.at(gone)}});
                        for (int u : state.members_of(gone)) state.move_node(u, keep);
                    }
                    for (int s = 0; s < params.split_count; ++s) {
                        auto ids = state.alive();
                        std::vector<int> splittable;
                        for (int id : ids) {
                            if (state.sizes.at(id) >= 2) splittable.push_back(id);
                        }
                        if (splittable.empty()) break;
                        const int source = rng.pick(splittable);
                        auto members = state.members_of(source);
                        rng.shuffle(members);
                        const int id = state.next_id++;
                        state.sizes[id] = 0;
                        const int half = static_cast<int>(members.size()) / 2;
                        for (int i = 0; i < half; ++i) state.move_node(members[static_cast<std::size_t>(i)], id);
                        events.push_back({t, "split", {source, id}, {state.sizes.at(source), half}});
                    }
                    break;
                }
            }
        }

        snapshots.push_back(sample_event_snapshot(state, hidden, params, rng));

        std::vector<int> labels = state.membership;
        for (int u = 0; u < n; ++u) {
            if (hidden.count(labels[static_cast<std::size_t>(u)])) {
                labels[static_cast<std::size_t>(u)] = state.next_id + 1 + u;  // unique singleton tag
            }
        }
        truths.emplace_back(labels);
    }

    return {DynamicNetwork(std::move(snapshots), dense_registry(n)), std::move(truths), std::move(events)};
}

EventModel event_model_from_string(const std::string& name) {
    if (name == "birth-death") return EventModel::birth_death;
    if (name == "expand-contract") return EventModel::expand_contract;
    if (name == "intermittent") return EventModel::intermittent;
    if (name == "merge-split") return EventModel::merge_split;
    throw std::invalid_argument("unknown event model: " + name);
}

std::string to_string(EventModel model) {
    switch (model) {
        case EventModel::birth_death: return "birth-death";
        case EventModel::expand_contract: return "expand-contract";
        case EventModel::intermittent: return "intermittent";
        case EventModel::merge_split: return "merge-split";
    }
    return "unknown";
}

}  // namespace tmoga
