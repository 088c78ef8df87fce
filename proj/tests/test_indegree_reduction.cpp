#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "drg/indegree_reduction.hpp"
#include "drg/verification.hpp"

using drg::NodeIndex;
using drg::ReducedNode;

TEST_CASE("flat index layout") {
    CHECK(drg::flat_index({1, 1}, 3) == 1);
    CHECK(drg::flat_index({1, 6}, 3) == 6);
    CHECK(drg::flat_index({2, 1}, 3) == 7);

    for (std::int64_t beta : {1, 3, 24}) {
        for (NodeIndex v = 1; v <= 5; ++v) {
            for (std::int64_t i = 1; i <= 2 * beta; ++i) {
                ReducedNode n{v, i};
                NodeIndex flat = drg::flat_index(n, beta);
                REQUIRE(drg::node_from_flat(flat, beta) == n);
            }
        }
    }
    // flat indices are consecutive across a chain boundary
    CHECK(drg::flat_index({1, 6}, 3) + 1 == drg::flat_index({2, 1}, 3));

    CHECK_THROWS_AS(drg::flat_index({1, 0}, 3), std::domain_error);
    CHECK_THROWS_AS(drg::flat_index({1, 7}, 3), std::domain_error);
    CHECK_THROWS_AS(drg::flat_index({0, 1}, 3), std::domain_error);
    CHECK_THROWS_AS(drg::flat_index({1, 1}, 0), std::domain_error);
    CHECK_THROWS_AS(drg::node_from_flat(0, 3), std::domain_error);
}

TEST_CASE("reduced parents of individual nodes") {
    // n = 8, single layer: beta = 162, chains of length 324
    const double delta = 0.25;
    const std::optional<std::int64_t> ov = 1;
    REQUIRE(drg::max_indegree_bound(delta, 8, ov) == 162);

    CHECK(drg::get_parents_low_indeg(delta, 8, 1, 1, ov).empty());
    // chain predecessor and first expander edge coincide at (1, 324)
    CHECK(drg::get_parents_low_indeg(delta, 8, 2, 1, ov) ==
          std::vector<ReducedNode>{{1, 324}});
    CHECK(drg::get_parents_low_indeg(delta, 8, 1, 2, ov) ==
          std::vector<ReducedNode>{{1, 1}});
    CHECK(drg::get_parents_low_indeg(delta, 8, 3, 2, ov) ==
          std::vector<ReducedNode>{{2, 324}, {3, 1}});
    // past the expander fan-in, only the chain remains
    CHECK(drg::get_parents_low_indeg(delta, 8, 8, 300, ov) ==
          std::vector<ReducedNode>{{8, 299}});

    CHECK_THROWS_AS(drg::get_parents_low_indeg(delta, 8, 0, 1, ov),
                    std::domain_error);
    CHECK_THROWS_AS(drg::get_parents_low_indeg(delta, 8, 9, 1, ov),
                    std::domain_error);
    CHECK_THROWS_AS(drg::get_parents_low_indeg(delta, 8, 1, 0, ov),
                    std::domain_error);
    CHECK_THROWS_AS(drg::get_parents_low_indeg(delta, 8, 1, 325, ov),
                    std::domain_error);
    CHECK_THROWS_AS(drg::get_parents_low_indeg(delta, 3, 1, 1, ov),
                    std::domain_error);
}

TEST_CASE("full reduced graph invariants") {
    const drg::EgsParams params{8, 0.25, 1};
    const std::int64_t beta = drg::max_indegree_bound(0.25, 8, 1);
    auto g = drg::materialize_low_indeg(params);
    REQUIRE(g.n == 2 * 8 * beta);
    REQUIRE(g.n == 2592);
    CHECK_NOTHROW(g.validate());

    for (NodeIndex flat = 1; flat <= g.n; ++flat) {
        const auto& ps = g.parents[static_cast<std::size_t>(flat - 1)];
        REQUIRE(ps.size() <= 2);
        for (NodeIndex p : ps) REQUIRE(p < flat);  // flat order is topological

        // agrees with the per-node query
        ReducedNode rn = drg::node_from_flat(flat, beta);
        auto direct = drg::get_parents_low_indeg(0.25, 8, rn.v, rn.i, 1);
        REQUIRE(direct == drg::get_parents_low_indeg(0.25, 8, rn.v, rn.i, 1));
        std::vector<NodeIndex> direct_flat;
        for (ReducedNode p : direct) direct_flat.push_back(drg::flat_index(p, beta));
        REQUIRE(ps == direct_flat);
    }
}

TEST_CASE("chains concatenate into a spine") {
    // n = 2, single layer: beta = 24, so 96 reduced nodes in one long chain
    auto g = drg::materialize_low_indeg({2, 0.25, 1});
    REQUIRE(g.n == 96);
    // every node after the first lists its flat predecessor
    for (NodeIndex flat = 2; flat <= g.n; ++flat) {
        const auto& ps = g.parents[static_cast<std::size_t>(flat - 1)];
        REQUIRE_FALSE(ps.empty());
        REQUIRE(ps.front() == flat - 1);
    }
    CHECK(drg::longest_path(g) == 95);
}
