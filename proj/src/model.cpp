#include "wsnsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsnsim {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void FieldConfig::validate() const {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("field: width and height must be positive");
    }
    if (nodes_per_region <= 0) {
        throw std::invalid_argument("field: nodes_per_region must be positive");
    }
    if (bs_x < 0 || bs_x > width || bs_y < 0 || bs_y > height) {
        throw std::invalid_argument("field: BS must lie inside the field");
    }
}

namespace {

// Region rectangle as [x_lo, x_hi) x [y_lo, y_hi).
struct Rect {
    double x_lo, x_hi, y_lo, y_hi;
};

Rect region_rect(const FieldConfig& cfg, Region r) {
    if (cfg.split_axis == SplitAxis::Vertical) {
        const double mid = cfg.width / 2.0;
        return r == Region::R1 ? Rect{0.0, mid, 0.0, cfg.height}
                               : Rect{mid, cfg.width, 0.0, cfg.height};
    }
    const double mid = cfg.height / 2.0;
    return r == Region::R1 ? Rect{0.0, cfg.width, mid, cfg.height}
                           : Rect{0.0, cfg.width, 0.0, mid};
}

}  // namespace

std::vector<NodeState> deploy(const FieldConfig& config, const RadioParams& radio,
                              RandomStream& rng) {
    config.validate();
    std::vector<NodeState> nodes;
    nodes.reserve(config.n_total());
    for (Region region : {Region::R1, Region::R2}) {
        const Rect rect = region_rect(config, region);
        for (int i = 0; i < config.nodes_per_region; ++i) {
            NodeState n;
            n.region = region;
            n.x = rect.x_lo + rng.uniform01() * (rect.x_hi - rect.x_lo);
            n.y = rect.y_lo + rng.uniform01() * (rect.y_hi - rect.y_lo);
            n.energy = radio.e_init;
            n.alive = true;
            nodes.push_back(n);
        }
    }
    return nodes;
}

std::vector<NodeState> assign_ids(std::vector<NodeState> nodes) {
    // Stable sort keeps deployment order as the final tie-break.
    std::stable_sort(nodes.begin(), nodes.end(), [](const NodeState& a, const NodeState& b) {
        if (a.region != b.region) return a.region < b.region;
        if (a.y != b.y) return a.y > b.y;  // descending y, top-most first
        return a.x < b.x;
    });
    int next_id = 1;
    for (auto& n : nodes) n.id = next_id++;
    return nodes;
}

std::string region_name(Region r) {
    return r == Region::R1 ? "R1" : "R2";
}

}  // namespace wsnsim
