#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "swl/model.hpp"
#include "swl/robot.hpp"
#include "swl/rng.hpp"
#include "swl/trace.hpp"

namespace swl {

struct SimOptions {
    int latency_max = 1;        // per-message latency drawn from {1..latency_max}
    bool disk_mode = false;     // collision heuristic for overlapping disks
    bool online_checks = false; // per-tick connectivity + crossing assertions
    long tick_budget_override = -1;
};

struct PathEdge {
    int from;  // robot index (owner side, closer to r_min)
    int to;
    Point2 a;
    Point2 b;
};

struct World {
    Scenario scenario;
    PhysicalParams params;
    SimOptions opts;
    long tick = 0;

    std::vector<RobotState> robots;
    CommGraph graph;  // rebuilt each tick from positions
    std::map<long, std::vector<Message>> in_flight;
    std::unordered_map<std::uint64_t, long> pair_last_delivery;
    Rng latency_rng;

    std::unordered_map<int, int> label_to_index;
    int idx_min = -1;
    int idx_max = -1;
    Point2 p_rmin{};
    Point2 p_rmax{};

    std::vector<PathEdge> path_edges;  // cache, rebuilt each tick

    TraceSink* trace = nullptr;
    RunMetrics metrics;

    bool failed = false;
    std::string failure;
    bool sort_capped = false;
    std::vector<int> chain_at_sort_start;  // labels in list order when sorting begins

    World() : latency_rng(0) {}

    RobotState& robot(int i) { return robots[i]; }
    const RobotState& robot(int i) const { return robots[i]; }
    int index_of(int label) const { return label_to_index.at(label); }
    bool in_range(int i, int j) const {
        return squared_dist(robots[i].pos, robots[j].pos) <=
               params.comm_range * params.comm_range;
    }

    void send(Message m);
    void emit(const TraceEvent& e);
    void fail(const std::string& why);
};

World make_world(const Scenario& s, const SimOptions& opts = {}, TraceSink* sink = nullptr);

/// One simulation tick: deliver due messages, run every controller in
/// ascending index order, integrate motion under the speed cap.
void step(World& w);

Point2 move_towards(Point2 cur, Point2 target, double max_step);

struct RunResult {
    bool stopped = false;  // predicate held before the budget ran out
    long ticks_used = 0;
};

RunResult run_until(World& w, const std::function<bool(const World&)>& stop, long max_ticks);

long default_tick_budget(int n);

bool all_done(const World& w);
std::vector<int> chain_order(const World& w);  // indices following succ from r_min
void rebuild_path_edges(World& w);

}  // namespace swl
