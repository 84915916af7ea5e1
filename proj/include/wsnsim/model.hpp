#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wsnsim/radio.hpp"

namespace wsnsim {

// Seeded uniform stream with a fixed draw order. All randomness in a run
// flows through one of these so traces are reproducible bit for bit.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

enum class Region : std::uint8_t { R1 = 0, R2 = 1 };
enum class SplitAxis : std::uint8_t { Vertical, Horizontal };
enum class Role : std::uint8_t { Member, ClusterHead, DirectSender };

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct FieldConfig {
    double width = 100.0;
    double height = 100.0;
    double bs_x = 50.0;
    double bs_y = 50.0;
    SplitAxis split_axis = SplitAxis::Vertical;
    int nodes_per_region = 50;

    int n_total() const { return 2 * nodes_per_region; }
    Point bs() const { return {bs_x, bs_y}; }

    // Throws std::invalid_argument if the geometry is inconsistent
    // (BS outside the field, non-positive sizes or counts).
    void validate() const;
};

struct NodeState {
    int id = 0;  // unique, 1-based; assigned after deployment
    Region region = Region::R1;
    double x = 0.0;
    double y = 0.0;
    double energy = 0.0;
    bool alive = true;
    Role role = Role::Member;

    Point pos() const { return {x, y}; }
};

// Places nodes_per_region nodes uniformly in each region rectangle, region 1
// first, drawing x then y per node. All nodes start at full energy. IDs are
// not assigned here.
std::vector<NodeState> deploy(const FieldConfig& config, const RadioParams& radio,
                              RandomStream& rng);

// Assigns IDs 1..n per region block: region 1 gets 1..nodes_per_region,
// region 2 the rest. Within a region, IDs follow descending y, ties broken
// by ascending x, then by deployment order. Returns nodes sorted by ID.
std::vector<NodeState> assign_ids(std::vector<NodeState> nodes);

std::string region_name(Region r);

}  // namespace wsnsim
