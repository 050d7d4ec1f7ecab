#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swl/geometry.hpp"

namespace swl {

/// Unique positive integer label; the sort order of the swarm.
using RobotId = int;

struct PhysicalParams {
    double robot_radius = 0.05;  // m
    double comm_range = 4.5;     // m
    double v_max = 1.0;          // m/s
    double tick_rate = 60.0;     // ticks/s

    double tick_dt() const { return 1.0 / tick_rate; }
    double max_step() const { return v_max / tick_rate; }
    void validate() const;
};

PhysicalParams default_params();

struct CommGraph {
    std::vector<std::vector<int>> adj;  // sorted neighbor indices per robot

    std::size_t size() const { return adj.size(); }
};

struct Scenario {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<Point2> positions;  // indexed by robot
    std::vector<RobotId> labels;    // indexed by robot
    PhysicalParams params;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CommGraph build_comm_graph(const std::vector<Point2>& positions, double range);
bool is_connected(const CommGraph& g);

/// Uniform placement in [0, 0.4n] x [0, 12] with the extremal-label robots
/// pinned to the lower corners; resamples until the comm graph is connected.
/// Deterministic in (n, seed, params).
Scenario generate_scenario(int n, std::uint64_t seed, const PhysicalParams& params);

/// Target slot per robot index: the i-th smallest label maps to
/// p_min + (i-1) * (p_max - p_min) / (n-1).
std::vector<Point2> target_positions(const Scenario& s);

std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

}  // namespace swl
