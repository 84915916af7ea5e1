#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wsnsim/engine.hpp"

namespace wsnsim {

struct ExperimentConfig {
    FieldConfig field;
    RadioParams radio;
    std::vector<StrategyKind> protocols{StrategyKind::LEACH, StrategyKind::LPCH,
                                        StrategyKind::UDLPCH};
    int k_opt = 10;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    int max_rounds = 50000;
    std::string out_dir = "results";
    bool region_restricted_membership = false;

    void validate() const;  // throws std::invalid_argument naming the bad key
    int q_step() const { return field.n_total() / k_opt; }
};

struct ProtocolSummary {
    StrategyKind kind;
    double stability_mean = 0.0;
    double lifetime_mean = 0.0;
    double total_packets_mean = 0.0;
};

struct ComparisonReport {
    std::vector<ProtocolSummary> summaries;
    // Pairwise metrics, keyed "lpch_vs_leach" etc. Percentages use
    // (a - b) / b * 100; ratios are a / b.
    std::map<std::string, double> stability_delta_pct;
    std::map<std::string, double> throughput_ratio;
    bool stability_ordering_ok = false;  // LEACH < LPCH < UDLPCH with margin
    bool throughput_ordering_ok = false;

    std::string to_text() const;
};

// Parses and validates a JSON config file. Absent fields take the paper-model
// defaults; unknown keys and out-of-range values raise std::invalid_argument
// naming the offending key. An empty file yields the full default config.
ExperimentConfig load_config(const std::filesystem::path& path);

// Serializes the fully-resolved config (all defaults materialized).
std::string config_echo(const ExperimentConfig& cfg);

// Runs every (protocol, seed) pair with paired deployments, writes per-round
// CSVs, the summary CSV, plot-data tables, and the resolved config echo into
// cfg.out_dir, and returns the comparison report.
ComparisonReport run_experiment(const ExperimentConfig& cfg);

// Writes the Fig 6-8 style plot tables (dead/alive/cumulative-throughput per
// round, one column per protocol) into `dir`.
void emit_plot_data(const std::vector<AggregateSeries>& aggregates,
                    const std::filesystem::path& dir);

}  // namespace wsnsim
