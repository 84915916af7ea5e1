#include "wsnsim/protocols.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsnsim {

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::LEACH: return "leach";
        case StrategyKind::LPCH: return "lpch";
        case StrategyKind::UDLPCH: return "udlpch";
    }
    return "unknown";
}

std::optional<StrategyKind> parse_strategy(const std::string& name) {
    if (name == "leach" || name == "LEACH") return StrategyKind::LEACH;
    if (name == "lpch" || name == "LPCH") return StrategyKind::LPCH;
    if (name == "udlpch" || name == "UDLPCH") return StrategyKind::UDLPCH;
    return std::nullopt;
}

double leach_threshold(double p, int round) {
    const int epoch = static_cast<int>(std::llround(1.0 / p));
    const double denom = 1.0 - p * static_cast<double>(round % epoch);
    assert(denom > 0.0 && "threshold denominator must stay positive within an epoch");
    return p / denom;
}

std::vector<int> leach_elect(const std::vector<NodeState>& nodes, ProtocolState& state,
                             int round, RandomStream& rng) {
    const double t = leach_threshold(state.p, round);
    std::vector<int> chs;
    // Nodes are kept sorted by id, so iteration order is the draw order.
    for (const auto& n : nodes) {
        if (!n.alive || !state.eligible[n.id - 1]) continue;
        if (rng.uniform01() < t) {
            chs.push_back(n.id);
            state.eligible[n.id - 1] = 0;
        }
    }
    return chs;
}

std::array<std::vector<int>, 2> lpch_first_round(const std::vector<NodeState>& nodes,
                                                 ProtocolState& state, RandomStream& rng) {
    std::array<std::vector<int>, 2> per_region;
    for (Region region : {Region::R1, Region::R2}) {
        auto& chs = per_region[static_cast<int>(region)];
        // Redraw until the region has at least one CH; a zero lock-in would
        // leave the region without cluster service for the whole run.
        do {
            chs.clear();
            for (const auto& n : nodes) {
                if (!n.alive || n.region != region) continue;
                if (rng.uniform01() < state.p) chs.push_back(n.id);
            }
        } while (chs.empty());
        state.locked_counts[static_cast<int>(region)] = static_cast<int>(chs.size());
    }
    return per_region;
}

std::array<std::vector<int>, 2> udlpch_first_round(const std::vector<NodeState>& nodes,
                                                   ProtocolState& state) {
    if (state.q_step <= 0) {
        throw std::invalid_argument("udlpch: q_step must be positive (k_opt too large?)");
    }
    std::array<std::vector<int>, 2> per_region;
    for (const auto& n : nodes) {
        if (n.alive && n.id % state.q_step == 0) {
            per_region[static_cast<int>(n.region)].push_back(n.id);
        }
    }
    state.locked_counts[0] = static_cast<int>(per_region[0].size());
    state.locked_counts[1] = static_cast<int>(per_region[1].size());
    return per_region;
}

std::optional<int> lpch_rotate(double prev_y, const std::vector<NodeState>& nodes,
                               Region region, std::vector<char>& taken) {
    const NodeState* below = nullptr;  // max y strictly below prev_y
    const NodeState* top = nullptr;    // max y overall, wrap-around target
    for (const auto& n : nodes) {
        if (!n.alive || n.region != region || taken[n.id - 1]) continue;
        if (!top || n.y > top->y || (n.y == top->y && n.id < top->id)) top = &n;
        if (n.y < prev_y) {
            if (!below || n.y > below->y || (n.y == below->y && n.id < below->id)) below = &n;
        }
    }
    const NodeState* pick = below ? below : top;
    if (!pick) return std::nullopt;  // region exhausted
    taken[pick->id - 1] = 1;
    return pick->id;
}

std::array<std::vector<int>, 2> next_round_chs(ProtocolState& state,
                                               const std::vector<NodeState>& nodes,
                                               int round, RandomStream& rng) {
    std::array<std::vector<int>, 2> per_region;
    if (state.kind == StrategyKind::LEACH) {
        for (int id : leach_elect(nodes, state, round, rng)) {
            per_region[static_cast<int>(nodes[id - 1].region)].push_back(id);
        }
        return per_region;
    }
    std::vector<char> taken(nodes.size(), 0);
    for (Region region : {Region::R1, Region::R2}) {
        const int ri = static_cast<int>(region);
        // Walk previous CHs top-down; the shared taken-set keeps walks from
        // landing on the same node.
        auto walk = state.prev_chs[ri];
        std::sort(walk.begin(), walk.end(), [](const PrevCh& a, const PrevCh& b) {
            if (a.y != b.y) return a.y > b.y;
            return a.id < b.id;
        });
        for (const auto& prev : walk) {
            if (auto next = lpch_rotate(prev.y, nodes, region, taken)) {
                per_region[ri].push_back(*next);
            }
            // else: region exhausted, the slot is dropped
        }
    }
    return per_region;
}

ClusterAssignment form_clusters(const std::vector<int>& ch_ids,
                                const std::vector<NodeState>& nodes, Point bs,
                                bool use_bs_override, bool region_restricted) {
    ClusterAssignment out;
    out.ch_ids = ch_ids;
    std::vector<char> is_ch(nodes.size() + 1, 0);
    for (int id : ch_ids) is_ch[id] = 1;

    for (const auto& n : nodes) {
        if (!n.alive || is_ch[n.id]) continue;
        const NodeState* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (int ch_id : ch_ids) {
            const NodeState& ch = nodes[ch_id - 1];
            if (region_restricted && ch.region != n.region) continue;
            const double d = distance(n.pos(), ch.pos());
            if (d < best_d || (d == best_d && best && ch.id < best->id)) {
                best = &ch;
                best_d = d;
            }
        }
        const double d_bs = distance(n.pos(), bs);
        if (!best || (use_bs_override && d_bs < best_d)) {
            out.direct_senders.push_back(n.id);
        } else {
            out.membership[n.id] = best->id;
        }
    }
    return out;
}

}  // namespace wsnsim
