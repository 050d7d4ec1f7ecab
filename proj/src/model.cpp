#include "swl/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "json.hpp"
#include "swl/rng.hpp"

namespace swl {

void PhysicalParams::validate() const {
    if (robot_radius <= 0 || comm_range <= 0 || v_max <= 0 || tick_rate <= 0)
        throw ScenarioError("physical parameters must be strictly positive");
    if (comm_range <= 4.0 * robot_radius)
        throw ScenarioError("comm_range must exceed 4x robot_radius");
}

PhysicalParams default_params() { return PhysicalParams{}; }

CommGraph build_comm_graph(const std::vector<Point2>& positions, double range) {
    const int n = static_cast<int>(positions.size());
    CommGraph g;
    g.adj.assign(n, {});
    const double r2 = range * range;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (squared_dist(positions[i], positions[j]) <= r2) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
            }
        }
    }
    return g;
}

bool is_connected(const CommGraph& g) {
    const int n = static_cast<int>(g.size());
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : g.adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
        }
    }
    return reached == n;
}

Scenario generate_scenario(int n, std::uint64_t seed, const PhysicalParams& params) {
    if (n < 2) throw ScenarioError("scenario requires n >= 2");
    params.validate();

    Scenario s;
    s.n = n;
    s.seed = seed;
    s.params = params;

    Rng rng(seed);

    s.labels.resize(n);
    std::iota(s.labels.begin(), s.labels.end(), 1);
    rng.shuffle(s.labels);
    const int idx_min = static_cast<int>(
        std::min_element(s.labels.begin(), s.labels.end()) - s.labels.begin());
    const int idx_max = static_cast<int>(
        std::max_element(s.labels.begin(), s.labels.end()) - s.labels.begin());

    const double width = 0.4 * n;
    const double height = 12.0;
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        s.positions.assign(n, {});
        for (int i = 0; i < n; ++i) {
            s.positions[i] = {rng.uniform(0.0, width), rng.uniform(0.0, height)};
        }
        s.positions[idx_min] = {0.0, 0.0};
        s.positions[idx_max] = {width, 0.0};
        if (is_connected(build_comm_graph(s.positions, params.comm_range))) return s;
    }
    throw ScenarioError("could not generate a connected scenario in 1000 attempts");
}

std::vector<Point2> target_positions(const Scenario& s) {
    if (s.n < 2) throw ScenarioError("target_positions requires n >= 2");
    // rank of each robot's label
    std::vector<int> order(s.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return s.labels[a] < s.labels[b]; });
    const Point2 p_min = s.positions[order.front()];
    const Point2 p_max = s.positions[order.back()];
    std::vector<Point2> targets(s.n);
    for (int rank = 0; rank < s.n; ++rank) {
        const double t = static_cast<double>(rank) / (s.n - 1);
        targets[order[rank]] = p_min + t * (p_max - p_min);
    }
    return targets;
}

std::string scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["seed"] = s.seed;
    j["params"] = {{"radius", s.params.robot_radius},
                   {"comm_range", s.params.comm_range},
                   {"v_max", s.params.v_max},
                   {"tick_rate", s.params.tick_rate}};
    auto& pos = j["positions"] = nlohmann::json::array();
    for (const auto& p : s.positions) pos.push_back({p.x, p.y});
    j["labels"] = s.labels;
    return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Scenario s;
    s.n = j.at("n").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto& p = j.at("params");
    s.params.robot_radius = p.at("radius").get<double>();
    s.params.comm_range = p.at("comm_range").get<double>();
    s.params.v_max = p.at("v_max").get<double>();
    s.params.tick_rate = p.at("tick_rate").get<double>();
    for (const auto& xy : j.at("positions"))
        s.positions.push_back({xy.at(0).get<double>(), xy.at(1).get<double>()});
    s.labels = j.at("labels").get<std::vector<RobotId>>();
    if (static_cast<int>(s.positions.size()) != s.n ||
        static_cast<int>(s.labels.size()) != s.n || s.n < 2)
        throw ScenarioError("malformed scenario json");
    s.params.validate();
    return s;
}

}  // namespace swl
