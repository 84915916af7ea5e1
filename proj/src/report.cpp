#include "wsnsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wsnsim {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void check_known_keys(const json& obj, const std::set<std::string>& known,
                      const std::string& scope) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("config: unknown key '" + scope + key + "'");
        }
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
        throw std::invalid_argument(std::string("config: '") + key + "' must be a number");
    }
    return obj[key].get<double>();
}

}  // namespace

void ExperimentConfig::validate() const {
    field.validate();
    RadioParams check = radio;
    check.finalize();
    if (protocols.empty()) throw std::invalid_argument("config: 'protocols' must be non-empty");
    if (seeds.empty()) throw std::invalid_argument("config: 'seeds' must be non-empty");
    if (max_rounds <= 0) throw std::invalid_argument("config: 'max_rounds' must be positive");
    if (k_opt <= 0 || k_opt >= field.n_total()) {
        throw std::invalid_argument("config: 'k_opt' must lie in [1, n_total)");
    }
    if (out_dir.empty()) throw std::invalid_argument("config: 'out_dir' must be non-empty");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    ExperimentConfig cfg;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        cfg.radio.finalize();
        cfg.validate();
        return cfg;  // empty file: full defaults
    }

    json j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    check_known_keys(j, {"field", "radio", "protocols", "k_opt", "seeds", "seed_count",
                         "max_rounds", "out_dir", "region_restricted_membership"},
                     "");

    if (j.contains("field")) {
        const json& f = j["field"];
        check_known_keys(f, {"width", "height", "bs_x", "bs_y", "split_axis",
                             "nodes_per_region"},
                         "field.");
        cfg.field.width = get_num(f, "width", cfg.field.width);
        cfg.field.height = get_num(f, "height", cfg.field.height);
        cfg.field.bs_x = get_num(f, "bs_x", cfg.field.bs_x);
        cfg.field.bs_y = get_num(f, "bs_y", cfg.field.bs_y);
        cfg.field.nodes_per_region =
            static_cast<int>(get_num(f, "nodes_per_region", cfg.field.nodes_per_region));
        if (f.contains("split_axis")) {
            const std::string axis = f["split_axis"].get<std::string>();
            if (axis == "vertical") {
                cfg.field.split_axis = SplitAxis::Vertical;
            } else if (axis == "horizontal") {
                cfg.field.split_axis = SplitAxis::Horizontal;
            } else {
                throw std::invalid_argument(
                    "config: 'field.split_axis' must be 'vertical' or 'horizontal'");
            }
        }
    }
    if (j.contains("radio")) {
        const json& r = j["radio"];
        check_known_keys(r, {"e_ele", "e_fs", "e_mp", "e_da", "e_init", "packet_bits", "p_opt"},
                         "radio.");
        cfg.radio.e_ele = get_num(r, "e_ele", cfg.radio.e_ele);
        cfg.radio.e_fs = get_num(r, "e_fs", cfg.radio.e_fs);
        cfg.radio.e_mp = get_num(r, "e_mp", cfg.radio.e_mp);
        cfg.radio.e_da = get_num(r, "e_da", cfg.radio.e_da);
        cfg.radio.e_init = get_num(r, "e_init", cfg.radio.e_init);
        cfg.radio.packet_bits =
            static_cast<std::int64_t>(get_num(r, "packet_bits", cfg.radio.packet_bits));
        cfg.radio.p_opt = get_num(r, "p_opt", cfg.radio.p_opt);
    }
    if (j.contains("protocols")) {
        cfg.protocols.clear();
        for (const auto& name : j["protocols"]) {
            auto kind = parse_strategy(name.get<std::string>());
            if (!kind) {
                throw std::invalid_argument("config: 'protocols' entry '" +
                                            name.get<std::string>() + "' is not a protocol");
            }
            cfg.protocols.push_back(*kind);
        }
    }
    if (j.contains("k_opt")) cfg.k_opt = static_cast<int>(get_num(j, "k_opt", cfg.k_opt));
    if (j.contains("seeds") && j.contains("seed_count")) {
        throw std::invalid_argument("config: give either 'seeds' or 'seed_count', not both");
    }
    if (j.contains("seeds")) {
        cfg.seeds.clear();
        for (const auto& s : j["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
    } else if (j.contains("seed_count")) {
        const int count = static_cast<int>(get_num(j, "seed_count", 5));
        if (count <= 0) throw std::invalid_argument("config: 'seed_count' must be positive");
        cfg.seeds.clear();
        for (int i = 1; i <= count; ++i) cfg.seeds.push_back(i);
    }
    if (j.contains("max_rounds")) {
        cfg.max_rounds = static_cast<int>(get_num(j, "max_rounds", cfg.max_rounds));
    }
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("region_restricted_membership")) {
        cfg.region_restricted_membership = j["region_restricted_membership"].get<bool>();
    }

    cfg.radio.finalize();
    cfg.validate();
    return cfg;
}

std::string config_echo(const ExperimentConfig& cfg) {
    json j;
    j["field"] = {{"width", cfg.field.width},
                  {"height", cfg.field.height},
                  {"bs_x", cfg.field.bs_x},
                  {"bs_y", cfg.field.bs_y},
                  {"split_axis",
                   cfg.field.split_axis == SplitAxis::Vertical ? "vertical" : "horizontal"},
                  {"nodes_per_region", cfg.field.nodes_per_region}};
    j["radio"] = {{"e_ele", cfg.radio.e_ele},     {"e_fs", cfg.radio.e_fs},
                  {"e_mp", cfg.radio.e_mp},       {"e_da", cfg.radio.e_da},
                  {"e_init", cfg.radio.e_init},   {"packet_bits", cfg.radio.packet_bits},
                  {"p_opt", cfg.radio.p_opt},     {"d_crossover", cfg.radio.d_crossover}};
    std::vector<std::string> names;
    for (auto kind : cfg.protocols) names.push_back(strategy_name(kind));
    j["protocols"] = names;
    j["k_opt"] = cfg.k_opt;
    j["q_step"] = cfg.q_step();
    j["seeds"] = cfg.seeds;
    j["max_rounds"] = cfg.max_rounds;
    j["out_dir"] = cfg.out_dir;
    j["region_restricted_membership"] = cfg.region_restricted_membership;
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // "\n" endings on every platform
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string per_round_csv(const AggregateSeries& agg) {
    std::string out = "round,dead_mean,alive_mean,packets_mean,ch_r1_mean,ch_r2_mean,energy_mean\n";
    for (std::size_t r = 0; r < agg.dead_mean.size(); ++r) {
        out += std::to_string(r) + "," + fmt(agg.dead_mean[r]) + "," + fmt(agg.alive_mean[r]) +
               "," + fmt(agg.packets_mean[r]) + "," + fmt(agg.ch_r1_mean[r]) + "," +
               fmt(agg.ch_r2_mean[r]) + "," + fmt(agg.energy_mean[r]) + "\n";
    }
    return out;
}

std::string plot_table(const std::vector<AggregateSeries>& aggs,
                       const std::vector<double>& (*column)(const AggregateSeries&),
                       bool cumulative) {
    std::size_t max_len = 0;
    for (const auto& a : aggs) max_len = std::max(max_len, column(a).size());
    std::string out = "round";
    for (const auto& a : aggs) out += "," + strategy_name(a.kind);
    out += "\n";
    std::vector<double> acc(aggs.size(), 0.0);
    for (std::size_t r = 0; r < max_len; ++r) {
        out += std::to_string(r);
        for (std::size_t i = 0; i < aggs.size(); ++i) {
            const auto& col = column(aggs[i]);
            const double v = r < col.size() ? col[r] : (col.empty() ? 0.0 : col.back());
            if (cumulative) {
                // Packet columns are zero past a series' end, so the
                // cumulative curve goes flat rather than repeating.
                acc[i] += r < col.size() ? col[r] : 0.0;
                out += "," + fmt(acc[i]);
            } else {
                out += "," + fmt(v);
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace

void emit_plot_data(const std::vector<AggregateSeries>& aggregates,
                    const std::filesystem::path& dir) {
    write_file(dir / "dead_vs_round.csv",
               plot_table(aggregates,
                          +[](const AggregateSeries& a) -> const std::vector<double>& {
                              return a.dead_mean;
                          },
                          false));
    write_file(dir / "alive_vs_round.csv",
               plot_table(aggregates,
                          +[](const AggregateSeries& a) -> const std::vector<double>& {
                              return a.alive_mean;
                          },
                          false));
    write_file(dir / "throughput_vs_round.csv",
               plot_table(aggregates,
                          +[](const AggregateSeries& a) -> const std::vector<double>& {
                              return a.packets_mean;
                          },
                          true));
}

std::string ComparisonReport::to_text() const {
    std::string out = "protocol comparison\n";
    for (const auto& s : summaries) {
        out += "  " + strategy_name(s.kind) + ": stability_mean=" + fmt(s.stability_mean) +
               " lifetime_mean=" + fmt(s.lifetime_mean) +
               " total_packets_mean=" + fmt(s.total_packets_mean) + "\n";
    }
    for (const auto& [key, v] : stability_delta_pct) {
        out += "  stability " + key + ": " + fmt(v) + "%\n";
    }
    for (const auto& [key, v] : throughput_ratio) {
        out += "  throughput " + key + ": " + fmt(v) + "x\n";
    }
    if (summaries.size() >= 3) {
        out += std::string("  stability ordering (leach < lpch < udlpch): ") +
               (stability_ordering_ok ? "ok" : "NOT met") + "\n";
        out += std::string("  throughput ordering (lpch >= 2x leach, udlpch >= lpch): ") +
               (throughput_ordering_ok ? "ok" : "NOT met") + "\n";
    }
    return out;
}

ComparisonReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::filesystem::path out_dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    {   // fail before any run if the directory is unusable
        std::ofstream probe(out_dir / ".write_probe", std::ios::binary);
        if (!probe) throw std::runtime_error("output directory not writable: " + cfg.out_dir);
    }
    std::filesystem::remove(out_dir / ".write_probe", ec);

    SimOptions opts;
    opts.region_restricted_membership = cfg.region_restricted_membership;
    opts.max_rounds = cfg.max_rounds;

    std::vector<AggregateSeries> aggregates;
    ComparisonReport report;
    for (StrategyKind kind : cfg.protocols) {
        std::vector<RunSeries> runs;
        for (std::uint64_t seed : cfg.seeds) {
            runs.push_back(simulate(cfg.field, cfg.radio, kind, cfg.k_opt, opts, seed));
        }
        AggregateSeries agg = aggregate(runs);
        write_file(out_dir / (strategy_name(kind) + "_rounds.csv"), per_round_csv(agg));
        report.summaries.push_back(
            {kind, agg.stability_mean, agg.lifetime_mean, agg.total_packets_mean});
        aggregates.push_back(std::move(agg));
    }

    std::string summary = "protocol,stability_mean,lifetime_mean,total_packets_mean\n";
    for (const auto& s : report.summaries) {
        summary += strategy_name(s.kind) + "," + fmt(s.stability_mean) + "," +
                   fmt(s.lifetime_mean) + "," + fmt(s.total_packets_mean) + "\n";
    }
    write_file(out_dir / "summary.csv", summary);
    emit_plot_data(aggregates, out_dir);
    write_file(out_dir / "config_echo.json", config_echo(cfg));

    auto find = [&](StrategyKind kind) -> const ProtocolSummary* {
        for (const auto& s : report.summaries) {
            if (s.kind == kind) return &s;
        }
        return nullptr;
    };
    const auto* leach = find(StrategyKind::LEACH);
    const auto* lpch = find(StrategyKind::LPCH);
    const auto* udlpch = find(StrategyKind::UDLPCH);
    auto pct = [](double a, double b) { return (a - b) / b * 100.0; };
    if (leach && lpch) {
        report.stability_delta_pct["lpch_vs_leach"] =
            pct(lpch->stability_mean, leach->stability_mean);
        report.throughput_ratio["lpch_vs_leach"] =
            lpch->total_packets_mean / leach->total_packets_mean;
    }
    if (lpch && udlpch) {
        report.stability_delta_pct["udlpch_vs_lpch"] =
            pct(udlpch->stability_mean, lpch->stability_mean);
        report.throughput_ratio["udlpch_vs_lpch"] =
            udlpch->total_packets_mean / lpch->total_packets_mean;
    }
    if (leach && udlpch) {
        report.stability_delta_pct["udlpch_vs_leach"] =
            pct(udlpch->stability_mean, leach->stability_mean);
        report.throughput_ratio["udlpch_vs_leach"] =
            udlpch->total_packets_mean / leach->total_packets_mean;
    }
    if (leach && lpch && udlpch) {
        report.stability_ordering_ok = lpch->stability_mean >= 1.03 * leach->stability_mean &&
                                       udlpch->stability_mean >= 1.03 * lpch->stability_mean;
        report.throughput_ordering_ok =
            lpch->total_packets_mean >= 2.0 * leach->total_packets_mean &&
            udlpch->total_packets_mean >= lpch->total_packets_mean;
    }
    return report;
}

}  // namespace wsnsim
