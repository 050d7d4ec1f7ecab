#pragma once

#include <vector>

#include "swl/geometry.hpp"
#include "swl/model.hpp"

namespace swl {

/// Single-source shortest paths under squared-Euclidean edge weights.
/// Unreachable vertices keep an infinite distance.
std::vector<double> dijkstra_squared(const std::vector<Point2>& positions,
                                     const CommGraph& graph, int source);

struct OddEvenResult {
    std::vector<int> sorted;     // final sequence
    long total_swaps = 0;
    long swap_rounds = 0;        // rounds that performed at least one swap
    long rounds_until_sorted = 0;  // 0 when already sorted
};

/// Odd-even transposition over the inner sequence; the first round pairs
/// (0,1),(2,3),... when first_pairs_at_front, else (1,2),(3,4),...
/// Runs until two consecutive swap-free rounds.
OddEvenResult odd_even_transposition(std::vector<int> inner, bool first_pairs_at_front);

/// Brute-force: no two edges of the polyline properly cross.
bool polyline_crossing_free(const std::vector<Point2>& pts);

/// Union-find connectivity, independent of the BFS used by the simulator.
bool connected_union_find(const CommGraph& g);

}  // namespace swl
