#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "wsnsim/engine.hpp"
#include "wsnsim/protocols.hpp"

using namespace wsnsim;

namespace {

std::vector<NodeState> grid_nodes(int per_region) {
    // deterministic positions, R1 on the left, ids follow descending y
    std::vector<NodeState> nodes;
    for (int r = 0; r < 2; ++r) {
        for (int i = 0; i < per_region; ++i) {
            NodeState n;
            n.region = r == 0 ? Region::R1 : Region::R2;
            n.x = r == 0 ? 10.0 + i % 5 : 60.0 + i % 5;
            n.y = 95.0 - i * (90.0 / per_region);
            n.energy = 0.5;
            nodes.push_back(n);
        }
    }
    return assign_ids(std::move(nodes));
}

}  // namespace

TEST_CASE("leach threshold over one epoch") {
    CHECK(leach_threshold(0.1, 0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(leach_threshold(0.1, 9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(leach_threshold(0.1, 10) == doctest::Approx(0.1).epsilon(1e-12));
    for (int r = 0; r < 10; ++r) {
        CHECK(leach_threshold(0.1, r) == doctest::Approx(0.1 / (1.0 - 0.1 * r)).epsilon(1e-12));
    }
}

TEST_CASE("leach election mean CH count is n*p") {
    const auto nodes = grid_nodes(50);
    const int trials = 20000;
    long long total = 0;
    for (int t = 0; t < trials; ++t) {
        auto state = make_protocol_state(StrategyKind::LEACH, 10, 100);
        RandomStream rng(1000 + t);
        total += static_cast<long long>(leach_elect(nodes, state, 0, rng).size());
    }
    const double mean = static_cast<double>(total) / trials;
    // per-trial sd = sqrt(100 * 0.1 * 0.9) = 3; 3 sigma of the mean
    const double three_sigma = 3.0 * 3.0 / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(mean - 10.0) < three_sigma);
}

TEST_CASE("leach eligibility holds within an epoch") {
    const auto nodes = grid_nodes(50);
    auto state = make_protocol_state(StrategyKind::LEACH, 10, 100);
    RandomStream rng(42);
    std::set<int> elected_this_epoch;
    for (int r = 0; r < 10; ++r) {
        for (int id : leach_elect(nodes, state, r, rng)) {
            CHECK(elected_this_epoch.count(id) == 0);
            elected_this_epoch.insert(id);
        }
    }
}

TEST_CASE("epoch-final round elects every still-eligible node") {
    auto nodes = grid_nodes(5);  // 10 nodes
    auto state = make_protocol_state(StrategyKind::LEACH, 2, 10);
    // leave only ids 3, 7, 9 eligible
    std::fill(state.eligible.begin(), state.eligible.end(), 0);
    state.eligible[2] = state.eligible[6] = state.eligible[8] = 1;
    RandomStream rng(5);
    const auto chs = leach_elect(nodes, state, 9, rng);  // T(0.1, 9) = 1
    CHECK(chs == std::vector<int>{3, 7, 9});
}

TEST_CASE("udlpch seeding matches the modular rule") {
    auto nodes = grid_nodes(50);
    auto state = make_protocol_state(StrategyKind::UDLPCH, 6, 100);
    CHECK(state.q_step == 16);  // floor(100/6)
    const auto per_region = udlpch_first_round(nodes, state);
    CHECK(per_region[0] == std::vector<int>{16, 32, 48});
    CHECK(per_region[1] == std::vector<int>{64, 80, 96});
    CHECK(state.locked_counts[0] == 3);
    CHECK(state.locked_counts[1] == 3);

    auto state10 = make_protocol_state(StrategyKind::UDLPCH, 10, 100);
    const auto pr10 = udlpch_first_round(nodes, state10);
    CHECK(pr10[0] == std::vector<int>{10, 20, 30, 40, 50});
    CHECK(pr10[1] == std::vector<int>{60, 70, 80, 90, 100});
}

TEST_CASE("udlpch rejects degenerate k_opt") {
    CHECK_THROWS_AS(make_protocol_state(StrategyKind::UDLPCH, 100, 100), std::invalid_argument);
    CHECK_THROWS_AS(make_protocol_state(StrategyKind::UDLPCH, 0, 100), std::invalid_argument);
}

TEST_CASE("lpch first round locks in at least one CH per region") {
    const auto nodes = grid_nodes(50);
    for (int seed = 0; seed < 200; ++seed) {
        auto state = make_protocol_state(StrategyKind::LPCH, 10, 100);
        state.p = 0.1;
        RandomStream rng(seed);
        const auto per_region = lpch_first_round(nodes, state, rng);
        CHECK(per_region[0].size() >= 1);
        CHECK(per_region[1].size() >= 1);
        CHECK(state.locked_counts[0] == static_cast<int>(per_region[0].size()));
        CHECK(state.locked_counts[1] == static_cast<int>(per_region[1].size()));
        // region 1 draws never touch region 2 ids
        for (int id : per_region[0]) CHECK(id <= 50);
        for (int id : per_region[1]) CHECK(id >= 51);
    }
}

TEST_CASE("lpch first round is deterministic per seed") {
    const auto nodes = grid_nodes(50);
    auto s1 = make_protocol_state(StrategyKind::LPCH, 10, 100);
    auto s2 = make_protocol_state(StrategyKind::LPCH, 10, 100);
    RandomStream r1(77), r2(77);
    CHECK(lpch_first_round(nodes, s1, r1) == lpch_first_round(nodes, s2, r2));
}

TEST_CASE("lpch rotation picks the closest node below") {
    std::vector<NodeState> nodes(3);
    nodes[0].region = Region::R1; nodes[0].y = 72; nodes[0].x = 1;
    nodes[1].region = Region::R1; nodes[1].y = 65; nodes[1].x = 2;
    nodes[2].region = Region::R1; nodes[2].y = 60; nodes[2].x = 3;
    auto sorted = assign_ids(nodes);
    for (auto& n : sorted) n.energy = 0.5;
    std::vector<char> taken(sorted.size(), 0);
    const auto pick = lpch_rotate(70.0, sorted, Region::R1, taken);
    REQUIRE(pick.has_value());
    CHECK(sorted[*pick - 1].y == 65.0);
}

TEST_CASE("lpch rotation wraps to the top-most node") {
    std::vector<NodeState> nodes(2);
    nodes[0].region = Region::R1; nodes[0].y = 90;
    nodes[1].region = Region::R1; nodes[1].y = 40;
    auto sorted = assign_ids(nodes);
    for (auto& n : sorted) n.energy = 0.5;
    std::vector<char> taken(sorted.size(), 0);
    const auto pick = lpch_rotate(5.0, sorted, Region::R1, taken);  // prev CH was bottom-most
    REQUIRE(pick.has_value());
    CHECK(sorted[*pick - 1].y == 90.0);
}

TEST_CASE("lpch rotation y-tie breaks by lowest id") {
    std::vector<NodeState> nodes(2);
    nodes[0].region = Region::R1; nodes[0].y = 65; nodes[0].x = 1;
    nodes[1].region = Region::R1; nodes[1].y = 65; nodes[1].x = 2;
    auto sorted = assign_ids(nodes);  // ids 1 (x=1) and 2 (x=2)
    for (auto& n : sorted) n.energy = 0.5;
    std::vector<char> taken(sorted.size(), 0);
    const auto pick = lpch_rotate(70.0, sorted, Region::R1, taken);
    REQUIRE(pick.has_value());
    CHECK(*pick == 1);
}

TEST_CASE("lpch rotation reports exhaustion") {
    std::vector<NodeState> nodes(1);
    nodes[0].region = Region::R1; nodes[0].y = 50;
    auto sorted = assign_ids(nodes);
    sorted[0].alive = false;
    std::vector<char> taken(sorted.size(), 0);
    CHECK_FALSE(lpch_rotate(70.0, sorted, Region::R1, taken).has_value());
}

TEST_CASE("conflicting rotation walks share the taken set") {
    // 4-node region; previous CHs at y=80 and y=75 would both target y=70.
    std::vector<NodeState> nodes(4);
    for (auto& n : nodes) n.region = Region::R1;
    nodes[0].y = 80; nodes[1].y = 75; nodes[2].y = 70; nodes[3].y = 60;
    auto sorted = assign_ids(nodes);
    for (auto& n : sorted) n.energy = 0.5;
    auto state = make_protocol_state(StrategyKind::LPCH, 2, 4);
    state.prev_chs[0] = {{sorted[0].id, 80.0}, {sorted[1].id, 75.0}};
    state.locked_counts[0] = 2;
    RandomStream rng(0);
    const auto per_region = next_round_chs(state, sorted, 1, rng);
    REQUIRE(per_region[0].size() == 2);
    // higher walk takes y=75... no: walk from y=80 picks y=75, walk from y=75 picks y=70
    CHECK(sorted[per_region[0][0] - 1].y == 75.0);
    CHECK(sorted[per_region[0][1] - 1].y == 70.0);
}

TEST_CASE("rotation clamps to the alive count") {
    std::vector<NodeState> nodes(5);
    for (auto& n : nodes) n.region = Region::R1;
    for (int i = 0; i < 5; ++i) nodes[i].y = 90 - 10 * i;
    auto sorted = assign_ids(nodes);
    for (auto& n : sorted) n.energy = 0.5;
    sorted[3].alive = false;
    sorted[4].alive = false;
    auto state = make_protocol_state(StrategyKind::LPCH, 3, 5);
    state.prev_chs[0] = {{1, 90.0}, {2, 80.0}, {3, 70.0}};
    state.locked_counts[0] = 3;
    RandomStream rng(0);
    const auto per_region = next_round_chs(state, sorted, 1, rng);
    // 3 CH slots, 3 alive nodes: all alive nodes serve
    std::set<int> got(per_region[0].begin(), per_region[0].end());
    CHECK(got == std::set<int>{1, 2, 3});
}

TEST_CASE("form_clusters matches brute force on a small instance") {
    std::vector<NodeState> nodes(5);
    nodes[0].region = Region::R1; nodes[0].x = 10; nodes[0].y = 80;
    nodes[1].region = Region::R1; nodes[1].x = 20; nodes[1].y = 40;
    nodes[2].region = Region::R1; nodes[2].x = 45; nodes[2].y = 55;
    nodes[3].region = Region::R2; nodes[3].x = 70; nodes[3].y = 70;
    nodes[4].region = Region::R2; nodes[4].x = 90; nodes[4].y = 20;
    auto sorted = assign_ids(nodes);
    for (auto& n : sorted) n.energy = 0.5;
    const Point bs{50, 50};
    const std::vector<int> chs{1, 4};  // top R1 node, top R2 node

    const auto got = form_clusters(chs, sorted, bs, true, false);

    for (const auto& n : sorted) {
        if (std::find(chs.begin(), chs.end(), n.id) != chs.end()) continue;
        // brute force: nearest CH with BS override
        double best_d = 1e300;
        int best_id = -1;
        for (int ch : chs) {
            const double d = distance(n.pos(), sorted[ch - 1].pos());
            if (d < best_d) { best_d = d; best_id = ch; }
        }
        if (distance(n.pos(), bs) < best_d) {
            CHECK(std::find(got.direct_senders.begin(), got.direct_senders.end(), n.id) !=
                  got.direct_senders.end());
        } else {
            REQUIRE(got.membership.count(n.id) == 1);
            CHECK(got.membership.at(n.id) == best_id);
        }
    }
}

TEST_CASE("direct-to-BS override") {
    std::vector<NodeState> nodes(2);
    nodes[0].region = Region::R1; nodes[0].x = 50; nodes[0].y = 80;  // CH
    nodes[1].region = Region::R1; nodes[1].x = 50; nodes[1].y = 60;  // 10 from BS, 20 from CH
    auto sorted = assign_ids(nodes);
    for (auto& n : sorted) n.energy = 0.5;
    const Point bs{50, 50};

    auto with = form_clusters({1}, sorted, bs, true, false);
    CHECK(with.direct_senders == std::vector<int>{2});
    CHECK(with.membership.empty());

    auto without = form_clusters({1}, sorted, bs, false, false);
    CHECK(without.direct_senders.empty());
    CHECK(without.membership.at(2) == 1);
}

TEST_CASE("empty CH list makes everyone a direct sender") {
    auto nodes = grid_nodes(5);
    const auto got = form_clusters({}, nodes, {50, 50}, false, false);
    CHECK(got.membership.empty());
    CHECK(got.direct_senders.size() == nodes.size());
}

TEST_CASE("cluster assignment partitions alive nodes") {
    auto nodes = grid_nodes(50);
    nodes[7].alive = false;
    nodes[33].alive = false;
    const std::vector<int> chs{5, 20, 60, 90};
    const auto got = form_clusters(chs, nodes, {50, 50}, true, false);
    std::set<int> seen(got.ch_ids.begin(), got.ch_ids.end());
    for (int id : got.direct_senders) CHECK(seen.insert(id).second);
    for (const auto& [member, ch] : got.membership) {
        CHECK(seen.insert(member).second);
        CHECK(nodes[ch - 1].alive);
    }
    CHECK(seen.size() == 98);
}

TEST_CASE("region-restricted membership keeps members in their region") {
    auto nodes = grid_nodes(50);
    const std::vector<int> chs{25, 75};
    const auto got = form_clusters(chs, nodes, {50, 50}, false, true);
    for (const auto& [member, ch] : got.membership) {
        CHECK(nodes[member - 1].region == nodes[ch - 1].region);
    }
}
