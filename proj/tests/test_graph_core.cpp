#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "msdiff/level_graph.hpp"
#include "oracles.hpp"

using namespace msdiff;

namespace {

Signature sig(std::vector<int> v) { return Signature(std::move(v)); }

// Builds a tree from per-vertex leg lists (1-based) and an edge list.
StableTree tree_of(int n, std::vector<std::vector<int>> vertex_legs,
                   std::vector<std::pair<int, int>> edges) {
    StableTree t;
    t.n_legs = n;
    t.vertex_count = static_cast<int>(vertex_legs.size());
    t.edges = std::move(edges);
    t.leg_at.assign(n, -1);
    for (int v = 0; v < t.vertex_count; ++v)
        for (int leg : vertex_legs[v]) t.leg_at[leg - 1] = v;
    return t;
}

int order_at(const StableTree& t, const HalfEdgeOrders& ho, int e, int vertex) {
    return t.edges[e].first == vertex ? ho.at[e].first : ho.at[e].second;
}

} // namespace

TEST_CASE("derive_orders: single vertex has no edge orders") {
    auto t = tree_of(4, {{1, 2, 3, 4}}, {});
    auto ho = derive_orders(t, sig({0, 0, 0, -2}));
    CHECK(ho.at.empty());
    CHECK(oracles::orders_consistent(t, sig({0, 0, 0, -2}), ho));
}

TEST_CASE("derive_orders: five-vertex tree with all enhancements 1") {
    // root carries leg 7; root - {5,6}; root - mid; mid - {1,2}; mid - {3,4}
    auto t = tree_of(7, {{7}, {5, 6}, {}, {1, 2}, {3, 4}},
                     {{0, 1}, {0, 2}, {2, 3}, {2, 4}});
    Signature mu = sig({0, 0, 0, 0, 0, 0, -2});
    auto ho = derive_orders(t, mu);
    CHECK(oracles::orders_consistent(t, mu, ho));
    for (int e = 0; e < 4; ++e) {
        auto [a, b] = ho.at[e];
        CHECK(std::max(a, b) == 0);
        CHECK(std::min(a, b) == -2);
    }
    // orders at the root itself are the non-negative ends
    CHECK(order_at(t, ho, 0, 0) == 0);
    CHECK(order_at(t, ho, 1, 0) == 0);
}

TEST_CASE("derive_orders: inverted cherry <3,4 | 5,6 || 1,2>") {
    auto t = tree_of(6, {{1, 2}, {3, 4}, {5, 6}}, {{0, 1}, {0, 2}});
    Signature mu = sig({1, 1, -1, -1, -1, -1});
    auto ho = derive_orders(t, mu);
    CHECK(oracles::orders_consistent(t, mu, ho));
    CHECK(order_at(t, ho, 0, 1) == 0); // upper vertices carry the zero end
    CHECK(order_at(t, ho, 1, 2) == 0);
    CHECK(order_at(t, ho, 0, 0) == -2);
    CHECK(order_at(t, ho, 1, 0) == -2);
}

TEST_CASE("derive_orders: cherry <5 || 1,2 | 3,4>") {
    auto t = tree_of(5, {{5}, {1, 2}, {3, 4}}, {{0, 1}, {0, 2}});
    Signature mu = sig({0, 0, 0, 0, -2});
    auto ho = derive_orders(t, mu);
    CHECK(order_at(t, ho, 0, 0) == 0);
    CHECK(order_at(t, ho, 1, 0) == 0);
    CHECK(order_at(t, ho, 0, 1) == -2);
    CHECK(order_at(t, ho, 1, 2) == -2);
}

TEST_CASE("derive_orders agrees with the direct partition formula") {
    for (int n = 4; n <= 6; ++n) {
        Signature mu = n == 4 ? sig({1, 0, -1, -2}) : n == 5 ? sig({2, 0, -1, -1, -2})
                                                             : sig({1, 1, 0, -1, -1, -2});
        for (const auto& t : enumerate_stable_trees(n)) {
            auto ho = derive_orders(t, mu);
            auto direct = oracles::orders_by_partition(t, mu);
            CHECK(ho.at == direct.at);
            CHECK(oracles::orders_consistent(t, mu, ho));
        }
    }
}

TEST_CASE("enumerate_stable_trees counts") {
    CHECK(enumerate_stable_trees(3).size() == 1);
    CHECK(enumerate_stable_trees(4).size() == 4); // single vertex + three 2-vertex trees
    auto five = enumerate_stable_trees(5, 1);
    int two_vertex = 0;
    for (const auto& t : five) two_vertex += (t.vertex_count == 2);
    CHECK(two_vertex == 10);
    CHECK(five.size() == 11); // plus the single-vertex tree
    for (const auto& t : enumerate_stable_trees(6)) CHECK(t.is_stable());
}

TEST_CASE("enumerate_stable_trees resource guard") {
    CHECK_THROWS_AS(enumerate_stable_trees(10), resource_limit_error);
    EnumLimits wide;
    wide.max_marked_points = 10;
    CHECK_NOTHROW(enumerate_stable_trees(6, 1, wide));
}

TEST_CASE("enumerate_level_structures: forced two-vertex orientation") {
    auto t = tree_of(5, {{5, 4}, {1, 2, 3}}, {{0, 1}});
    Signature mu = sig({0, 0, 0, 0, -2});
    auto ls = enumerate_level_structures(t, derive_orders(t, mu), mu);
    REQUIRE(ls.size() == 1);
    CHECK(ls[0].level[0] == 0); // the pole side sits on top
    CHECK(ls[0].level[1] == -1);
}

TEST_CASE("enumerate_level_structures: cherry admits three levelings") {
    auto t = tree_of(5, {{5}, {1, 2}, {3, 4}}, {{0, 1}, {0, 2}});
    Signature mu = sig({0, 0, 0, 0, -2});
    auto ls = enumerate_level_structures(t, derive_orders(t, mu), mu);
    CHECK(ls.size() == 3);
    std::set<std::pair<int, int>> leaf_levels;
    for (const auto& g : ls) leaf_levels.insert({g.level[1], g.level[2]});
    CHECK(leaf_levels == std::set<std::pair<int, int>>{{-1, -1}, {-1, -2}, {-2, -1}});
}

TEST_CASE("every stable tree admits at least one level structure") {
    Signature mu = sig({2, 1, -1, -2, -2});
    for (const auto& t : enumerate_stable_trees(5)) {
        auto ls = enumerate_level_structures(t, derive_orders(t, mu), mu);
        CHECK(!ls.empty());
        for (const auto& g : ls) CHECK_NOTHROW(g.validate());
    }
}

TEST_CASE("enumerate_strata: exceptional divisors for (0^4,-2)") {
    Signature mu = sig({0, 0, 0, 0, -2});
    auto codim1 = enumerate_strata(mu, 1);
    std::vector<EnhancedLevelGraph> exceptional;
    for (const auto& g : codim1)
        if (g.tree.edge_count() >= 2) exceptional.push_back(g);
    REQUIRE(exceptional.size() == 3);
    // bottom pairs {1,2}/{3,4}, {1,3}/{2,4}, {1,4}/{2,3}
    std::set<std::set<std::set<int>>> partitions;
    for (const auto& g : exceptional) {
        std::set<std::set<int>> blocks;
        for (int v = 0; v < g.tree.vertex_count; ++v) {
            if (g.level[v] != -1) continue;
            std::set<int> b;
            for (int l = 0; l < 5; ++l)
                if (g.tree.leg_at[l] == v) b.insert(l + 1);
            blocks.insert(b);
        }
        partitions.insert(blocks);
    }
    std::set<std::set<std::set<int>>> expected{
        {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}};
    CHECK(partitions == expected);
}

TEST_CASE("enumerate_strata: 25 exceptional divisors for (0^5,-2)") {
    Signature mu = sig({0, 0, 0, 0, 0, -2});
    int pairs23 = 0, pairs22 = 0;
    for (const auto& g : enumerate_strata(mu, 1)) {
        if (g.levels_below_top() != 1 || g.tree.edge_count() < 2) continue;
        std::vector<int> sizes;
        for (int v = 0; v < g.tree.vertex_count; ++v)
            if (g.level[v] == -1) sizes.push_back(std::popcount(g.tree.legs_on(v)));
        std::sort(sizes.begin(), sizes.end());
        if (sizes == std::vector<int>{2, 3}) ++pairs23;
        if (sizes == std::vector<int>{2, 2}) ++pairs22;
    }
    CHECK(pairs23 == 10);
    CHECK(pairs22 == 15);
}

TEST_CASE("enumerate_strata: horizontal divisors of (0,0,0,-1,-1)") {
    Signature mu = sig({0, 0, 0, -1, -1});
    int horizontal = 0;
    for (const auto& g : enumerate_strata(mu, 1)) {
        if (g.horizontal_edges() == 0) continue;
        ++horizontal;
        CHECK(g.horizontal_edges() == 1);
        CHECK(g.levels_below_top() == 0);
        for (int e = 0; e < g.tree.edge_count(); ++e) {
            CHECK(g.orders.at[e].first == -1);
            CHECK(g.orders.at[e].second == -1);
        }
    }
    // one -1 leg per side plus a nonempty proper subset of the three zeros
    CHECK(horizontal == 6);
}

TEST_CASE("open stratum is unique at codimension 0") {
    for (auto mu : {sig({0, 0, 0, -2}), sig({1, -1, -1, -1}), sig({3, -1, -2, -2})}) {
        auto open = enumerate_strata(mu, 0);
        REQUIRE(open.size() == 1);
        CHECK(open[0].tree.vertex_count == 1);
    }
}

TEST_CASE("canonical_form: internal relabeling is invisible") {
    Signature mu = sig({0, 0, 0, 0, -2});
    auto a = tree_of(5, {{5}, {1, 2}, {3, 4}}, {{0, 1}, {0, 2}});
    auto b = tree_of(5, {{3, 4}, {5}, {1, 2}}, {{1, 2}, {1, 0}}); // same graph, vertices permuted
    auto ga = make_level_graph(a, mu, {0, -1, -1});
    auto gb = make_level_graph(b, mu, {-1, 0, -1});
    CHECK(canonical_form(ga) == canonical_form(gb));

    auto c = tree_of(5, {{5}, {1, 3}, {2, 4}}, {{0, 1}, {0, 2}});
    auto gc = make_level_graph(c, mu, {0, -1, -1});
    CHECK(canonical_form(ga) != canonical_form(gc)); // different leg partition
}

TEST_CASE("canonical_form separates non-isomorphic strata and merges relabelings") {
    Signature mu = sig({1, 0, -1, -1, -1});
    auto strata = enumerate_strata(mu);
    std::set<std::string> keys;
    for (const auto& g : strata) keys.insert(canonical_form(g));
    CHECK(keys.size() == strata.size()); // enumeration is duplicate-free

    // randomized vertex relabelings keep the encoding fixed
    std::minstd_rand rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        const auto& g = strata[rng() % strata.size()];
        std::vector<int> perm(g.tree.vertex_count);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        StableTree t2;
        t2.n_legs = g.tree.n_legs;
        t2.vertex_count = g.tree.vertex_count;
        for (auto [u, v] : g.tree.edges) t2.edges.emplace_back(perm[u], perm[v]);
        t2.leg_at.resize(t2.n_legs);
        for (int l = 0; l < t2.n_legs; ++l) t2.leg_at[l] = perm[g.tree.leg_at[l]];
        std::vector<int> lv(t2.vertex_count);
        for (int v = 0; v < t2.vertex_count; ++v) lv[perm[v]] = g.level[v];
        auto g2 = make_level_graph(t2, mu, std::move(lv));
        CHECK(canonical_form(g) == canonical_form(g2));
    }
}

TEST_CASE("undegenerate: keeping every passage is the identity") {
    Signature mu = sig({0, 0, 0, 0, -2});
    for (const auto& g : enumerate_strata(mu)) {
        int L = g.levels_below_top();
        if (L == 0) continue;
        std::set<int> all;
        for (int i = 1; i <= L; ++i) all.insert(i);
        CHECK(canonical_form(undegenerate(g, all)) == canonical_form(g));
    }
}

TEST_CASE("undegenerate: three-level chain to a divisor") {
    // root{5} - mid{3,4} - bottom{1,2}, levels 0,-1,-2
    auto t = tree_of(5, {{5}, {3, 4}, {1, 2}}, {{0, 1}, {1, 2}});
    Signature mu = sig({0, 0, 0, 0, -2});
    auto g = make_level_graph(t, mu, {0, -1, -2});
    auto d = undegenerate(g, {1});
    CHECK(d.tree.vertex_count == 2);
    CHECK(d.levels_below_top() == 1);
    CHECK(oracles::orders_consistent(d.tree, mu, d.orders));
    // the merged bottom vertex carries legs 1..4
    for (int v = 0; v < 2; ++v)
        if (d.level[v] == -1) CHECK(std::popcount(d.tree.legs_on(v)) == 4);
}

TEST_CASE("undegenerate compatibility: {i,j} then top passage equals {i}") {
    Signature mu = sig({0, 0, 0, 0, 0, -2});
    for (const auto& g : enumerate_strata(mu)) {
        int L = g.levels_below_top();
        if (L < 2 || g.horizontal_edges() > 0) continue;
        for (int i = 1; i <= L; ++i)
            for (int j = i + 1; j <= L; ++j) {
                auto two = undegenerate(g, {i, j});
                CHECK(canonical_form(undegenerate(two, {1})) ==
                      canonical_form(undegenerate(g, {i})));
            }
    }
}

TEST_CASE("every enumerated stratum satisfies the vertex degree invariants") {
    for (auto mu : {sig({0, 0, 0, 0, -2}), sig({2, -1, -1, -1, -1}), sig({1, 1, -1, -1, -2})}) {
        for (const auto& g : enumerate_strata(mu)) {
            CHECK_NOTHROW(g.validate());
            CHECK(oracles::orders_consistent(g.tree, mu, g.orders));
        }
    }
}
