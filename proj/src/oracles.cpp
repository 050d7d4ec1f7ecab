#include "swl/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

namespace swl {

std::vector<double> dijkstra_squared(const std::vector<Point2>& positions,
                                     const CommGraph& graph, int source) {
    const int n = static_cast<int>(positions.size());
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (int v : graph.adj[u]) {
            const double nd = d + squared_dist(positions[u], positions[v]);
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist;
}

OddEvenResult odd_even_transposition(std::vector<int> inner, bool first_pairs_at_front) {
    OddEvenResult res;
    const int k = static_cast<int>(inner.size());
    bool at_front = first_pairs_at_front;
    int calm = 0;
    long round = 0;
    while (calm < 2) {
        ++round;
        bool swapped = false;
        for (int i = at_front ? 0 : 1; i + 1 < k; i += 2) {
            if (inner[i] > inner[i + 1]) {
                std::swap(inner[i], inner[i + 1]);
                ++res.total_swaps;
                swapped = true;
            }
        }
        if (swapped) {
            ++res.swap_rounds;
            res.rounds_until_sorted = round;
            calm = 0;
        } else {
            ++calm;
        }
        at_front = !at_front;
    }
    res.sorted = std::move(inner);
    return res;
}

bool polyline_crossing_free(const std::vector<Point2>& pts) {
    const int m = static_cast<int>(pts.size()) - 1;
    for (int i = 0; i < m; ++i) {
        if (pts[i] == pts[i + 1]) continue;
        const Segment2 a{pts[i], pts[i + 1]};
        for (int j = i + 1; j < m; ++j) {
            if (pts[j] == pts[j + 1]) continue;
            const Segment2 b{pts[j], pts[j + 1]};
            if (segments_properly_intersect(a, b)) return false;
        }
    }
    return true;
}

bool connected_union_find(const CommGraph& g) {
    const int n = static_cast<int>(g.size());
    if (n == 0) return true;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = n;
    for (int u = 0; u < n; ++u)
        for (int v : g.adj[u]) {
            const int ru = find(u), rv = find(v);
            if (ru != rv) {
                parent[ru] = rv;
                --components;
            }
        }
    return components == 1;
}

}  // namespace swl
