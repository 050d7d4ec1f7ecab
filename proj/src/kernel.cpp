#include "swl/world.hpp"

#include <cassert>

#include "swl/controller.hpp"

namespace swl {

void World::emit(const TraceEvent& e) {
    metrics.record(e);
    if (trace) trace->emit(e);
}

void World::fail(const std::string& why) {
    if (failed) return;
    failed = true;
    failure = why;
}

void World::send(Message m) {
    m.sent_tick = tick;
    int lat = 1;
    if (opts.latency_max > 1) lat = 1 + static_cast<int>(latency_rng.uniform_int(opts.latency_max));
    long when = tick + lat;
    // per-sender FIFO: a later send may never overtake an earlier one
    const auto key = static_cast<std::uint64_t>(m.sender);
    auto it = pair_last_delivery.find(key);
    if (it != pair_last_delivery.end() && it->second > when) when = it->second;
    pair_last_delivery[key] = when;
    in_flight[when].push_back(m);
    emit({tick, TraceKind::Send, m.sender, static_cast<int>(m.type), m.recipient, 0.0});
}

Point2 move_towards(Point2 cur, Point2 target, double max_step) {
    const double d = dist(cur, target);
    if (d <= max_step) return target;
    return cur + (target - cur) * (max_step / d);
}

long default_tick_budget(int n) { return 200L * n + 20000L; }

World make_world(const Scenario& s, const SimOptions& opts, TraceSink* sink) {
    s.params.validate();
    if (static_cast<int>(s.positions.size()) != s.n ||
        static_cast<int>(s.labels.size()) != s.n)
        throw ScenarioError("scenario arrays disagree with n");

    World w;
    w.scenario = s;
    w.params = s.params;
    w.opts = opts;
    w.trace = sink;
    w.latency_rng = Rng(s.seed ^ 0x9e3779b97f4a7c15ULL);

    w.robots.resize(s.n);
    int lab_min = s.labels[0], lab_max = s.labels[0];
    for (int i = 0; i < s.n; ++i) {
        RobotState& r = w.robots[i];
        r.index = i;
        r.label = s.labels[i];
        r.pos = s.positions[i];
        r.election.best_min = r.label;
        r.election.best_max = r.label;
        w.label_to_index[r.label] = i;
        lab_min = std::min(lab_min, s.labels[i]);
        lab_max = std::max(lab_max, s.labels[i]);
    }
    w.idx_min = w.label_to_index.at(lab_min);
    w.idx_max = w.label_to_index.at(lab_max);
    w.p_rmin = s.positions[w.idx_min];
    w.p_rmax = s.positions[w.idx_max];

    double diam = 0.0;
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j)
            diam = std::max(diam, dist(s.positions[i], s.positions[j]));
    w.metrics.begin(s.n, s.seed, diam);

    w.graph = build_comm_graph(s.positions, s.params.comm_range);
    return w;
}

void rebuild_path_edges(World& w) {
    w.path_edges.clear();
    for (const RobotState& r : w.robots) {
        if (!r.path.on_path || r.path.succ_label < 0) continue;
        auto it = w.label_to_index.find(r.path.succ_label);
        if (it == w.label_to_index.end()) continue;
        const RobotState& s = w.robots[it->second];
        w.path_edges.push_back({r.index, s.index, r.pos, s.pos});
    }
}

std::vector<int> chain_order(const World& w) {
    std::vector<int> order;
    int cur = w.idx_min;
    for (int hops = 0; hops < static_cast<int>(w.robots.size()); ++hops) {
        order.push_back(cur);
        const int succ = w.robots[cur].path.succ_label;
        if (succ < 0) break;
        auto it = w.label_to_index.find(succ);
        if (it == w.label_to_index.end()) break;
        cur = it->second;
    }
    return order;
}

bool all_done(const World& w) {
    for (const RobotState& r : w.robots)
        if (r.phase != Phase::Done) return false;
    return true;
}

namespace {

void deliver_due(World& w) {
    auto node = w.in_flight.extract(w.tick);
    if (node.empty()) return;
    for (const Message& m : node.mapped()) {
        if (m.recipient == kBroadcast) {
            for (int j : w.graph.adj[m.sender]) {
                w.robots[j].inbox.push_back(m);
                w.emit({w.tick, TraceKind::Deliver, j, static_cast<int>(m.type), m.sender, 0.0});
            }
        } else {
            w.robots[m.recipient].inbox.push_back(m);
            w.emit({w.tick, TraceKind::Deliver, m.recipient, static_cast<int>(m.type),
                    m.sender, 0.0});
        }
    }
}

void integrate_motion(World& w) {
    const double step = w.params.max_step();
    const double min_sep = 2.0 * w.params.robot_radius;
    for (RobotState& r : w.robots) {
        if (r.phase == Phase::Done || !r.motion_target) continue;
        if (r.index == w.idx_min || r.index == w.idx_max) continue;  // anchors stay put
        Point2 next = move_towards(r.pos, *r.motion_target, step);
        if (w.opts.disk_mode) {
            // yield to whichever colliding robot has less ground left to cover
            const double mine = dist(next, *r.motion_target);
            bool blocked = false;
            for (const RobotState& o : w.robots) {
                if (o.index == r.index) continue;
                if (squared_dist(next, o.pos) >= min_sep * min_sep) continue;
                const double theirs = o.motion_target ? dist(o.pos, *o.motion_target) : 0.0;
                if (theirs < mine || (theirs == mine && o.index < r.index)) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
        }
        const double moved = dist(r.pos, next);
        if (moved > 0.0) {
            r.pos = next;
            r.odometer += moved;
            w.emit({w.tick, TraceKind::Move, r.index, 0, 0, moved});
        }
    }
}

}  // namespace

void step(World& w) {
    w.graph = build_comm_graph([&] {
        std::vector<Point2> ps(w.robots.size());
        for (const RobotState& r : w.robots) ps[r.index] = r.pos;
        return ps;
    }(), w.params.comm_range);
    rebuild_path_edges(w);

    deliver_due(w);
    for (int i = 0; i < static_cast<int>(w.robots.size()); ++i) {
        run_controller(w, i);
        w.robots[i].inbox.clear();
    }
    integrate_motion(w);

    if (w.opts.online_checks && !is_connected(w.graph))
        w.fail("communication graph disconnected at tick " + std::to_string(w.tick));

    w.metrics.end_tick();
    ++w.tick;
}

RunResult run_until(World& w, const std::function<bool(const World&)>& stop, long max_ticks) {
    RunResult res;
    while (w.tick < max_ticks) {
        if (stop(w)) {
            res.stopped = true;
            res.ticks_used = w.tick;
            return res;
        }
        if (w.failed) break;
        step(w);
    }
    res.stopped = !w.failed && stop(w);
    res.ticks_used = w.tick;
    return res;
}

}  // namespace swl
