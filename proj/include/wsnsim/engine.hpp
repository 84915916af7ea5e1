#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsnsim/model.hpp"
#include "wsnsim/protocols.hpp"
#include "wsnsim/radio.hpp"

namespace wsnsim {

struct RoundRecord {
    int round = 0;
    int dead = 0;
    int alive = 0;
    int packets_to_bs = 0;
    int ch_count_r1 = 0;
    int ch_count_r2 = 0;
    double energy_total = 0.0;  // residual sum, may dip below zero on final transmissions
};

struct TraceEvent {
    int round = 0;
    int node_id = 0;
    std::string action;  // ch_tx | member_tx | direct_tx | death
    double energy_after = 0.0;
};

struct RunSeries {
    std::vector<RoundRecord> records;
    int stability_period = 0;  // round index of first node death
    int lifetime = 0;          // round index of last node death
    std::int64_t total_packets = 0;
    std::uint64_t seed = 0;
    StrategyKind kind = StrategyKind::LEACH;
    bool truncated = false;    // max_rounds hit with nodes still alive
};

// How a cluster head's reception/aggregation load is priced each round:
// the mean cluster size of its selection scope (per region for the
// two-region protocols, network-wide for LEACH), or its actual member
// count.
enum class ClusterCharging : std::uint8_t { MeanSize, ActualCount };

struct SimOptions {
    bool region_restricted_membership = false;
    ClusterCharging charging = ClusterCharging::MeanSize;
    int max_rounds = 50000;
};

// Full mutable per-run state. One run is strictly sequential; separate runs
// share nothing.
struct NetworkState {
    std::vector<NodeState> nodes;  // sorted by id
    int round = 0;
    ProtocolState protocol;
    RadioParams radio;
    Point bs;
    SimOptions opts;
    RandomStream rng;  // election draws only; deployment uses its own stream
    double consumed_energy = 0.0;
    std::vector<TraceEvent>* trace = nullptr;  // optional event sink

    NetworkState(std::vector<NodeState> nodes_, ProtocolState proto, RadioParams radio_,
                 Point bs_, SimOptions opts_, std::uint64_t election_seed);

    int alive_count() const;
    double residual_energy() const;
};

// Executes one round in fixed order: CH selection, cluster formation,
// energy charging, liveness update, record emission.
RoundRecord run_round(NetworkState& state);

// Builds protocol bookkeeping for a fresh run over the given nodes.
ProtocolState make_protocol_state(StrategyKind kind, int k_opt, int n_total);

// Runs an already-deployed node set to completion. Used by simulate() and
// directly by tests with crafted instances.
RunSeries simulate_nodes(std::vector<NodeState> nodes, const RadioParams& radio,
                         StrategyKind kind, int k_opt, Point bs, const SimOptions& opts,
                         std::uint64_t seed, std::vector<TraceEvent>* trace = nullptr);

// Deploys with the seed's deployment stream, assigns IDs, and runs rounds
// until the network dies or max_rounds is reached. Deployment draws are
// segregated from election draws, so every protocol sees the same node
// placement for a given seed.
RunSeries simulate(const FieldConfig& field, const RadioParams& radio, StrategyKind kind,
                   int k_opt, const SimOptions& opts, std::uint64_t seed,
                   std::vector<TraceEvent>* trace = nullptr);

// Deployment for a given seed, shared across protocols.
std::vector<NodeState> deploy_for_seed(const FieldConfig& field, const RadioParams& radio,
                                       std::uint64_t seed);

struct AggregateSeries {
    std::vector<double> dead_mean;
    std::vector<double> alive_mean;
    std::vector<double> packets_mean;
    std::vector<double> ch_r1_mean;
    std::vector<double> ch_r2_mean;
    std::vector<double> energy_mean;
    double stability_mean = 0.0;
    double lifetime_mean = 0.0;
    double total_packets_mean = 0.0;
    StrategyKind kind = StrategyKind::LEACH;
};

// Per-round means over runs of one protocol. Shorter series are padded past
// their end with the dead-network values (alive 0, packets 0, final energy).
// Throws std::invalid_argument on an empty list.
AggregateSeries aggregate(const std::vector<RunSeries>& series_list);

}  // namespace wsnsim
