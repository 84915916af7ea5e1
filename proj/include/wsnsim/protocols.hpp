#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsnsim/model.hpp"

namespace wsnsim {

enum class StrategyKind : std::uint8_t { LEACH, LPCH, UDLPCH };

std::string strategy_name(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(const std::string& name);

// A previous-round cluster head as rotation input: the walk keys off the
// recorded y-coordinate even if the node has since died.
struct PrevCh {
    int id = 0;
    double y = 0.0;
};

struct ProtocolState {
    StrategyKind kind = StrategyKind::LEACH;
    int k_opt = 10;
    double p = 0.1;  // CH probability driving elections and the epoch length
    int q_step = 0;  // floor(n_total / k_opt), UDLPCH seeding modulus
    std::array<std::vector<PrevCh>, 2> prev_chs;    // per region
    std::array<int, 2> locked_counts{0, 0};         // round-0 CH counts, LPCH/UDLPCH
    std::vector<char> eligible;                     // by id-1; LEACH epoch G-set
};

struct ClusterAssignment {
    std::vector<int> ch_ids;
    std::map<int, int> membership;     // member id -> CH id
    std::vector<int> direct_senders;
};

// LEACH election threshold T(r) = p / (1 - p*(r mod round(1/p))).
double leach_threshold(double p, int round);

// Draws one uniform per eligible alive node in ascending ID order; a node
// becomes CH iff u < T. Elected nodes leave the eligibility set until the
// epoch wraps (handled by the caller resetting `eligible`).
std::vector<int> leach_elect(const std::vector<NodeState>& nodes, ProtocolState& state,
                             int round, RandomStream& rng);

// Round-0 LPCH election: LEACH draws run independently per region; a region
// electing zero CHs is redrawn from the same stream until it has at least
// one. Locks the per-region counts into `state`.
std::array<std::vector<int>, 2> lpch_first_round(const std::vector<NodeState>& nodes,
                                                 ProtocolState& state, RandomStream& rng);

// Round-0 UDLPCH seeding: every node whose ID is a multiple of q_step
// becomes CH. Deterministic. Throws std::invalid_argument if q_step would
// be zero or k_opt >= n_total.
std::array<std::vector<int>, 2> udlpch_first_round(const std::vector<NodeState>& nodes,
                                                   ProtocolState& state);

// One rotation step: among alive, not-taken nodes of the region with
// y strictly below prev_y, picks the one with maximal y (ties: lowest ID);
// wraps to the region's top-most such node when none lies below. Returns
// nullopt when the region has no alive not-taken node left.
std::optional<int> lpch_rotate(double prev_y, const std::vector<NodeState>& nodes,
                               Region region, std::vector<char>& taken);

// Dispatches CH selection for rounds r >= 1. LEACH re-elects over the whole
// network; LPCH/UDLPCH walk each region's previous CHs in descending
// previous-y order with a shared taken-set.
std::array<std::vector<int>, 2> next_round_chs(ProtocolState& state,
                                               const std::vector<NodeState>& nodes,
                                               int round, RandomStream& rng);

// Nearest-CH cluster formation. Each alive non-CH node joins its nearest CH
// (ties: lowest CH id); with use_bs_override set, a node nearer the BS than
// its nearest CH sends direct instead. An empty CH list makes every alive
// non-CH node a direct sender. region_restricted limits candidate CHs to
// the node's own region.
ClusterAssignment form_clusters(const std::vector<int>& ch_ids,
                                const std::vector<NodeState>& nodes, Point bs,
                                bool use_bs_override, bool region_restricted);

}  // namespace wsnsim
