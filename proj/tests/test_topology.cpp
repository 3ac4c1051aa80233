#include "doctest.h"

#include <cmath>
#include <sstream>

#include "plcnet/topology.hpp"

using namespace plcnet;
using namespace plcnet::topology;

TEST_CASE("minimum first layer") {
    CHECK(min_first_layer(64, 6) == 2);
    CHECK(min_first_layer(1200, 6) == 4);
    CHECK(min_first_layer(1, 6) == 1);
    CHECK(min_first_layer(729, 6) == 3);
    CHECK(min_first_layer(730, 6) == 4);
    CHECK(min_first_layer(50, 1) == 50);

    // Against ceil(exp(ln N / K)) away from exact powers, where rounding is not an issue.
    for (std::uint32_t k = 1; k <= 6; ++k) {
        for (std::uint32_t n = 2; n <= 1500; ++n) {
            const double root = std::exp(std::log(static_cast<double>(n)) / k);
            if (std::abs(root - std::round(root)) < 1e-6) continue;
            REQUIRE(min_first_layer(n, k) == static_cast<std::uint32_t>(std::ceil(root)));
        }
    }
}

TEST_CASE("single layer star") {
    for (std::uint32_t n : {1u, 50u, 650u}) {
        const auto t = single_layer(n);
        CHECK(t.sta_count() == n);
        CHECK(t.max_depth() == 1);
        CHECK(t.layers().front().size() == n);
        CHECK(t.children(kCco).size() == n);
        CHECK(t.check(1).empty());
    }
    CHECK_THROWS_AS(single_layer(0), std::invalid_argument);
}

TEST_CASE("one layer forces a star") {
    std::mt19937_64 rng(3);
    const auto t = generate_tree(5, 1, rng);
    CHECK(t.max_depth() == 1);
    CHECK(t.layers().front().size() == 5);
}

TEST_CASE("generated trees satisfy the structural constraints") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::mt19937_64 rng(seed);
        const auto t = generate_tree(64, 6, rng);
        REQUIRE(t.sta_count() == 64);
        REQUIRE(t.layers().front().size() >= 2);
        REQUIRE(t.check(6) == "");
    }
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        const auto t = generate_tree(1200, 6, rng);
        REQUIRE(t.layers().front().size() >= 4);
        REQUIRE(t.max_depth() <= 6);
        REQUIRE(t.check(6) == "");
    }
}

TEST_CASE("generator is deterministic and not degenerate") {
    std::mt19937_64 a(99), b(99);
    CHECK(generate_tree(300, 6, a).edge_list() == generate_tree(300, 6, b).edge_list());

    int deep = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        if (generate_tree(500, 6, rng).max_depth() > 1) ++deep;
    }
    CHECK(deep > 50);
}

TEST_CASE("roles and coordinator order") {
    // 1, 2 under the CCO; 3 under 1; 4 under 3; 5 under 2.
    const std::vector<NodeIndex> parents{0, 0, 1, 3, 2};
    const auto t = NetworkTree::from_parents(parents);
    CHECK(t.max_depth() == 3);
    CHECK(t.depth(4) == 3);
    CHECK(t.nodes()[0].role == Role::CCO);
    CHECK(t.nodes()[1].role == Role::PCO);
    CHECK(t.nodes()[4].role == Role::STA);
    CHECK(t.coordinators_bfs() == std::vector<NodeIndex>{0, 1, 2, 3});
    CHECK(t.edge_list() == "1 0 1\n2 0 1\n3 1 2\n4 3 3\n5 2 2\n");
    CHECK(t.check(3).empty());
    CHECK_FALSE(t.check(2).empty());
}

TEST_CASE("malformed parent links") {
    const std::vector<NodeIndex> cycle{2, 1};
    CHECK_THROWS_AS(NetworkTree::from_parents(cycle), std::invalid_argument);
    const std::vector<NodeIndex> self{1};
    CHECK_THROWS_AS(NetworkTree::from_parents(self), std::invalid_argument);
    const std::vector<NodeIndex> out_of_range{7};
    CHECK_THROWS_AS(NetworkTree::from_parents(out_of_range), std::invalid_argument);
}
