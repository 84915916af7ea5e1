#include "wsnsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace wsnsim {

namespace {

// Election draws come from a stream derived from the run seed, so the
// deployment stream (seeded with the raw seed) is untouched by protocol
// differences and every protocol sees identical placements.
constexpr std::uint64_t kElectionStreamSalt = 0x9e3779b97f4a7c15ull;

}  // namespace

NetworkState::NetworkState(std::vector<NodeState> nodes_, ProtocolState proto,
                           RadioParams radio_, Point bs_, SimOptions opts_,
                           std::uint64_t election_seed)
    : nodes(std::move(nodes_)),
      protocol(std::move(proto)),
      radio(radio_),
      bs(bs_),
      opts(opts_),
      rng(election_seed) {}

int NetworkState::alive_count() const {
    return static_cast<int>(
        std::count_if(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.alive; }));
}

double NetworkState::residual_energy() const {
    double total = 0.0;
    for (const auto& n : nodes) total += n.energy;
    return total;
}

ProtocolState make_protocol_state(StrategyKind kind, int k_opt, int n_total) {
    ProtocolState ps;
    ps.kind = kind;
    ps.k_opt = k_opt;
    if (kind == StrategyKind::UDLPCH) {
        if (k_opt <= 0 || k_opt >= n_total) {
            throw std::invalid_argument("udlpch: k_opt must lie in [1, n_total)");
        }
        ps.q_step = n_total / k_opt;
        if (ps.q_step == 0) throw std::invalid_argument("udlpch: q_step is zero");
    }
    ps.eligible.assign(n_total, 1);
    return ps;
}

namespace {

std::array<std::vector<int>, 2> select_chs(NetworkState& s) {
    auto& ps = s.protocol;
    const int r = s.round;
    if (ps.kind == StrategyKind::LEACH) {
        // Epoch wrap: every node still alive becomes eligible again.
        if (r % s.radio.epoch_rounds() == 0) {
            for (const auto& n : s.nodes) ps.eligible[n.id - 1] = n.alive ? 1 : 0;
        }
        std::array<std::vector<int>, 2> per_region;
        for (int id : leach_elect(s.nodes, ps, r, s.rng)) {
            per_region[static_cast<int>(s.nodes[id - 1].region)].push_back(id);
        }
        return per_region;
    }
    if (r == 0) {
        return ps.kind == StrategyKind::LPCH ? lpch_first_round(s.nodes, ps, s.rng)
                                             : udlpch_first_round(s.nodes, ps);
    }
    return next_round_chs(ps, s.nodes, r, s.rng);
}

void emit(NetworkState& s, int node_id, const char* action, double energy_after) {
    if (s.trace) s.trace->push_back({s.round, node_id, action, energy_after});
}

}  // namespace

RoundRecord run_round(NetworkState& s) {
    assert(s.alive_count() > 0);
    const auto per_region = select_chs(s);

    std::vector<int> ch_ids;
    for (const auto& region_chs : per_region) {
        ch_ids.insert(ch_ids.end(), region_chs.begin(), region_chs.end());
    }
    if (s.protocol.kind != StrategyKind::LEACH) {
        for (int ri = 0; ri < 2; ++ri) {
            s.protocol.prev_chs[ri].clear();
            for (int id : per_region[ri]) {
                s.protocol.prev_chs[ri].push_back({id, s.nodes[id - 1].y});
            }
        }
    }

    for (auto& n : s.nodes) n.role = Role::Member;
    for (int id : ch_ids) s.nodes[id - 1].role = Role::ClusterHead;

    // Members attach to the nearest CH; the direct-to-BS override is the
    // LPCH/UDLPCH refinement, baseline LEACH keeps classic membership.
    const bool use_override = s.protocol.kind != StrategyKind::LEACH;
    const auto clusters =
        form_clusters(ch_ids, s.nodes, s.bs, use_override, s.opts.region_restricted_membership);
    for (int id : clusters.direct_senders) s.nodes[id - 1].role = Role::DirectSender;

    std::vector<int> member_counts(s.nodes.size() + 1, 0);
    for (const auto& [member_id, ch_id] : clusters.membership) ++member_counts[ch_id];

    // Mean cluster size per charging scope: the CH's region for the
    // two-region protocols, the whole network for LEACH.
    std::array<double, 2> region_mean{0.0, 0.0};
    double network_mean = 0.0;
    if (!ch_ids.empty()) {
        std::array<int, 2> region_members{0, 0};
        std::array<int, 2> region_ch{0, 0};
        for (int id : ch_ids) {
            const int ri = static_cast<int>(s.nodes[id - 1].region);
            region_members[ri] += member_counts[id];
            ++region_ch[ri];
        }
        for (int ri = 0; ri < 2; ++ri) {
            if (region_ch[ri] > 0) {
                region_mean[ri] = static_cast<double>(region_members[ri]) / region_ch[ri];
            }
        }
        network_mean = static_cast<double>(clusters.membership.size()) /
                       static_cast<double>(ch_ids.size());
    }

    // Energy charging in ascending node id. A node with positive energy
    // transmits in full; its energy may go negative on that final action.
    int packets = 0;
    for (auto& n : s.nodes) {
        if (!n.alive) continue;
        double cost = 0.0;
        const char* action = nullptr;
        switch (n.role) {
            case Role::ClusterHead:
                if (s.opts.charging == ClusterCharging::MeanSize) {
                    const double mean = s.protocol.kind == StrategyKind::LEACH
                                            ? network_mean
                                            : region_mean[static_cast<int>(n.region)];
                    cost = ch_round_energy_mean(s.radio, mean, distance(n.pos(), s.bs));
                } else {
                    cost = ch_round_energy(s.radio, member_counts[n.id], distance(n.pos(), s.bs));
                }
                action = "ch_tx";
                break;
            case Role::DirectSender:
                cost = non_ch_round_energy(s.radio, distance(n.pos(), s.bs));
                action = "direct_tx";
                break;
            case Role::Member:
                cost = non_ch_round_energy(
                    s.radio, distance(n.pos(), s.nodes[clusters.membership.at(n.id) - 1].pos()));
                action = "member_tx";
                break;
        }
        n.energy -= cost;
        s.consumed_energy += cost;
        if (n.role != Role::Member) ++packets;
        emit(s, n.id, action, n.energy);
    }

    int dead = 0;
    for (auto& n : s.nodes) {
        if (n.alive && n.energy <= 0.0) {
            n.alive = false;
            emit(s, n.id, "death", n.energy);
        }
        if (!n.alive) ++dead;
    }

    RoundRecord rec;
    rec.round = s.round;
    rec.dead = dead;
    rec.alive = static_cast<int>(s.nodes.size()) - dead;
    rec.packets_to_bs = packets;
    rec.ch_count_r1 = static_cast<int>(per_region[0].size());
    rec.ch_count_r2 = static_cast<int>(per_region[1].size());
    rec.energy_total = s.residual_energy();
    ++s.round;
    return rec;
}

RunSeries simulate_nodes(std::vector<NodeState> nodes, const RadioParams& radio,
                         StrategyKind kind, int k_opt, Point bs, const SimOptions& opts,
                         std::uint64_t seed, std::vector<TraceEvent>* trace) {
    if (opts.max_rounds <= 0) throw std::invalid_argument("max_rounds must be positive");
    auto ps = make_protocol_state(kind, k_opt, static_cast<int>(nodes.size()));
    ps.p = radio.p_opt;
    NetworkState state(std::move(nodes), std::move(ps), radio, bs, opts,
                       seed ^ kElectionStreamSalt);
    state.trace = trace;

    RunSeries series;
    series.seed = seed;
    series.kind = kind;
    int first_death = -1;
    int last_death = -1;
    while (state.alive_count() > 0 && state.round < opts.max_rounds) {
        RoundRecord rec = run_round(state);
        if (first_death < 0 && rec.dead > 0) first_death = rec.round;
        if (rec.alive == 0 && last_death < 0) last_death = rec.round;
        series.total_packets += rec.packets_to_bs;
        series.records.push_back(rec);
    }
    series.truncated = state.alive_count() > 0;
    const int end = series.records.empty() ? 0 : series.records.back().round;
    series.stability_period = first_death >= 0 ? first_death : end;
    series.lifetime = last_death >= 0 ? last_death : end;
    return series;
}

std::vector<NodeState> deploy_for_seed(const FieldConfig& field, const RadioParams& radio,
                                       std::uint64_t seed) {
    RandomStream deploy_rng(seed);
    return assign_ids(deploy(field, radio, deploy_rng));
}

RunSeries simulate(const FieldConfig& field, const RadioParams& radio, StrategyKind kind,
                   int k_opt, const SimOptions& opts, std::uint64_t seed,
                   std::vector<TraceEvent>* trace) {
    return simulate_nodes(deploy_for_seed(field, radio, seed), radio, kind, k_opt, field.bs(),
                          opts, seed, trace);
}

AggregateSeries aggregate(const std::vector<RunSeries>& series_list) {
    if (series_list.empty()) throw std::invalid_argument("aggregate: empty series list");
    const std::size_t runs = series_list.size();
    std::size_t max_len = 0;
    for (const auto& s : series_list) max_len = std::max(max_len, s.records.size());

    AggregateSeries agg;
    agg.kind = series_list.front().kind;
    agg.dead_mean.assign(max_len, 0.0);
    agg.alive_mean.assign(max_len, 0.0);
    agg.packets_mean.assign(max_len, 0.0);
    agg.ch_r1_mean.assign(max_len, 0.0);
    agg.ch_r2_mean.assign(max_len, 0.0);
    agg.energy_mean.assign(max_len, 0.0);

    for (const auto& s : series_list) {
        for (std::size_t r = 0; r < max_len; ++r) {
            if (r < s.records.size()) {
                const auto& rec = s.records[r];
                agg.dead_mean[r] += rec.dead;
                agg.alive_mean[r] += rec.alive;
                agg.packets_mean[r] += rec.packets_to_bs;
                agg.ch_r1_mean[r] += rec.ch_count_r1;
                agg.ch_r2_mean[r] += rec.ch_count_r2;
                agg.energy_mean[r] += rec.energy_total;
            } else if (!s.records.empty()) {
                // Past the series' end the network is dead: counts freeze,
                // no further packets.
                const auto& last = s.records.back();
                agg.dead_mean[r] += last.dead;
                agg.alive_mean[r] += last.alive;
                agg.energy_mean[r] += last.energy_total;
            }
        }
        agg.stability_mean += s.stability_period;
        agg.lifetime_mean += s.lifetime;
        agg.total_packets_mean += static_cast<double>(s.total_packets);
    }
    const double inv = 1.0 / static_cast<double>(runs);
    for (std::size_t r = 0; r < max_len; ++r) {
        agg.dead_mean[r] *= inv;
        agg.alive_mean[r] *= inv;
        agg.packets_mean[r] *= inv;
        agg.ch_r1_mean[r] *= inv;
        agg.ch_r2_mean[r] *= inv;
        agg.energy_mean[r] *= inv;
    }
    agg.stability_mean *= inv;
    agg.lifetime_mean *= inv;
    agg.total_packets_mean *= inv;
    return agg;
}

}  // namespace wsnsim
