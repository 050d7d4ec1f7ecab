#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "swl/model.hpp"
#include "swl/oracles.hpp"
#include "swl/rng.hpp"

using namespace swl;

TEST_CASE("dijkstra on a hand-built graph") {
    // square with one diagonal; squared weights make two short hops cheaper
    // than one long one
    std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CommGraph g;
    g.adj = {{1, 2, 3}, {0, 2}, {0, 1, 3}, {0, 2}};
    const std::vector<double> d = dijkstra_squared(pts, g, 0);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[3] == doctest::Approx(1.0));
    // direct diagonal costs 2; 0->1->2 costs 1+1 = 2 as well
    CHECK(d[2] == doctest::Approx(2.0));
}

TEST_CASE("dijkstra marks unreachable vertices infinite") {
    std::vector<Point2> pts{{0, 0}, {1, 0}, {5, 5}};
    CommGraph g;
    g.adj = {{1}, {0}, {}};
    const std::vector<double> d = dijkstra_squared(pts, g, 0);
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == std::numeric_limits<double>::infinity());
}

namespace {

// Bellman-Ford, deliberately different from the heap-based implementation.
std::vector<double> bellman_ford(const std::vector<Point2>& pts, const CommGraph& g, int src) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> d(n, std::numeric_limits<double>::infinity());
    d[src] = 0.0;
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (int u = 0; u < n; ++u)
            for (int v : g.adj[u]) {
                const double cand = d[u] + squared_dist(pts[u], pts[v]);
                if (cand < d[v]) {
                    d[v] = cand;
                    changed = true;
                }
            }
        if (!changed) break;
    }
    return d;
}

}  // namespace

TEST_CASE("dijkstra agrees with bellman-ford on random scenarios") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scenario s = generate_scenario(30, seed, default_params());
        const CommGraph g = build_comm_graph(s.positions, s.params.comm_range);
        const std::vector<double> a = dijkstra_squared(s.positions, g, 0);
        const std::vector<double> b = bellman_ford(s.positions, g, 0);
        for (int i = 0; i < s.n; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}

TEST_CASE("odd-even transposition sorts and counts") {
    SUBCASE("known example") {
        const OddEvenResult r = odd_even_transposition({4, 3, 2}, true);
        CHECK(r.sorted == std::vector<int>{2, 3, 4});
        CHECK(r.total_swaps == 3);
        CHECK(r.swap_rounds == 3);
    }
    SUBCASE("already sorted") {
        const OddEvenResult r = odd_even_transposition({1, 2, 3, 4}, true);
        CHECK(r.sorted == std::vector<int>{1, 2, 3, 4});
        CHECK(r.total_swaps == 0);
        CHECK(r.swap_rounds == 0);
        CHECK(r.rounds_until_sorted == 0);
    }
    SUBCASE("empty and singleton") {
        CHECK(odd_even_transposition({}, true).sorted.empty());
        CHECK(odd_even_transposition({9}, false).sorted == std::vector<int>{9});
    }
    SUBCASE("phase offset does not change the result, only the schedule") {
        const OddEvenResult a = odd_even_transposition({5, 1, 4, 2, 3}, true);
        const OddEvenResult b = odd_even_transposition({5, 1, 4, 2, 3}, false);
        CHECK(a.sorted == b.sorted);
        CHECK(a.total_swaps == b.total_swaps);  // same inversions resolved
    }
}

TEST_CASE("odd-even matches std::sort on random inputs, rounds within bound") {
    Rng rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform_int(25));
        std::vector<int> v(k);
        std::iota(v.begin(), v.end(), 1);
        rng.shuffle(v);
        std::vector<int> expect = v;
        std::sort(expect.begin(), expect.end());

        const OddEvenResult r = odd_even_transposition(v, trial % 2 == 0);
        CHECK(r.sorted == expect);
        CHECK(r.rounds_until_sorted <= k);  // classical bound

        // total swaps equal the inversion count of the input
        long inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) inv += v[i] > v[j];
        CHECK(r.total_swaps == inv);
    }
}

TEST_CASE("polyline crossing detection") {
    CHECK(polyline_crossing_free({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    // figure-eight: first and last edges cross
    CHECK_FALSE(polyline_crossing_free({{0, 0}, {2, 2}, {2, 0}, {0, 2}}));
    // fewer than two edges can never cross
    CHECK(polyline_crossing_free({{0, 0}}));
    CHECK(polyline_crossing_free({{0, 0}, {5, 5}}));
    // long straight-ish chain
    std::vector<Point2> chain;
    for (int i = 0; i < 50; ++i) chain.push_back({double(i), (i % 2) * 0.1});
    CHECK(polyline_crossing_free(chain));
}

TEST_CASE("union-find connectivity agrees with bfs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scenario s = generate_scenario(20, seed, default_params());
        CommGraph g = build_comm_graph(s.positions, s.params.comm_range);
        CHECK(connected_union_find(g) == is_connected(g));

        // sever one vertex completely: must disconnect (n >= 3)
        for (int j : g.adj[5]) std::erase(g.adj[j], 5);
        g.adj[5].clear();
        CHECK(connected_union_find(g) == is_connected(g));
        CHECK_FALSE(connected_union_find(g));
    }
}
