#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "swl/oracles.hpp"
#include "swl/pipeline.hpp"

using namespace swl;

namespace {

struct VecSink : TraceSink {
    std::vector<TraceEvent> events;
    void emit(const TraceEvent& e) override { events.push_back(e); }
};

std::vector<Point2> path_polyline(const World& w) {
    std::vector<Point2> pts;
    int cur = w.idx_min;
    for (int hops = 0; hops <= w.scenario.n; ++hops) {
        pts.push_back(w.robot(cur).pos);
        if (cur == w.idx_max) return pts;
        const int succ = w.robot(cur).path.succ_label;
        if (succ < 0) break;
        cur = w.index_of(succ);
    }
    return {};  // broken chain
}

}  // namespace

TEST_CASE("leader election matches the global extrema, motionless, r_min last") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        VecSink sink;
        World w = make_world(generate_scenario(25, seed, default_params()), {}, &sink);
        const RunResult res = run_to_phase(w, Phase::PathBuild, default_tick_budget(25));
        REQUIRE(res.stopped);
        REQUIRE_FALSE(w.failed);

        for (const RobotState& r : w.robots) {
            CHECK(r.election.best_min == 1);
            CHECK(r.election.best_max == 25);
            CHECK(r.odometer == 0.0);  // nobody moves while electing
        }

        // r_min's own transition out of the election is the latest one
        long rmin_tick = -1, latest_other = -1;
        for (const TraceEvent& e : sink.events) {
            if (e.kind != TraceKind::Phase || e.a != int(Phase::PathBuild)) continue;
            if (e.robot == w.idx_min)
                rmin_tick = e.tick;
            else
                latest_other = std::max(latest_other, e.tick);
        }
        REQUIRE(rmin_tick >= 0);
        CHECK(rmin_tick >= latest_other);
    }
}

TEST_CASE("routing-tree distances equal dijkstra exactly") {
    // relaxation finishes before anyone moves, so the distances are computed
    // on the initial static positions and must agree bit for bit
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Scenario sc = generate_scenario(30, seed, default_params());
        World w = make_world(sc, {}, nullptr);
        const RunResult res =
            run_to_phase(w, Phase::ContractStraighten, default_tick_budget(30));
        REQUIRE(res.stopped);
        REQUIRE_FALSE(w.failed);

        const CommGraph g = build_comm_graph(sc.positions, sc.params.comm_range);
        const std::vector<double> d = dijkstra_squared(sc.positions, g, w.idx_min);
        for (int i = 0; i < sc.n; ++i) CHECK(w.robot(i).sp.dist == d[i]);
    }
}

TEST_CASE("the central path is crossing-free when formed") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        World w = make_world(generate_scenario(35, seed, default_params()), {}, nullptr);
        const RunResult res =
            run_to_phase(w, Phase::ContractStraighten, default_tick_budget(35));
        REQUIRE(res.stopped);
        REQUIRE_FALSE(w.failed);

        const std::vector<Point2> poly = path_polyline(w);
        REQUIRE_FALSE(poly.empty());
        CHECK(poly.size() >= 2);
        CHECK(polyline_crossing_free(poly));

        // the path is the shortest route, so every robot on it is flagged
        int on_path = 0;
        for (const RobotState& r : w.robots) on_path += r.path.on_path;
        CHECK(on_path == static_cast<int>(poly.size()));
    }
}

TEST_CASE("phases only ever advance") {
    VecSink sink;
    World w = make_world(generate_scenario(20, 3, default_params()), {}, &sink);
    REQUIRE(run_full(w).stopped);
    std::vector<int> last(20, int(Phase::LeaderElection));
    for (const TraceEvent& e : sink.events) {
        if (e.kind != TraceKind::Phase) continue;
        CHECK(e.a > last[e.robot]);
        last[e.robot] = e.a;
    }
    for (int p : last) CHECK(p == int(Phase::Done));
}

TEST_CASE("the chain entering the sort contains everyone, anchored correctly") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        World w = make_world(generate_scenario(22, seed, default_params()), {}, nullptr);
        REQUIRE(run_full(w).stopped);
        REQUIRE_FALSE(w.failed);

        std::vector<int> chain = w.chain_at_sort_start;
        REQUIRE(static_cast<int>(chain.size()) == 22);
        CHECK(chain.front() == 1);
        CHECK(chain.back() == 22);
        std::sort(chain.begin(), chain.end());
        std::vector<int> expect(22);
        std::iota(expect.begin(), expect.end(), 1);
        CHECK(chain == expect);  // a permutation: nobody lost, nobody duplicated
    }
}

TEST_CASE("full runs finish sorted on the target segment") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const Scenario sc = generate_scenario(20, seed, default_params());
        World w = make_world(sc, {}, nullptr);
        const RunResult res = run_full(w);
        REQUIRE(res.stopped);
        REQUIRE_FALSE(w.failed);
        CHECK_FALSE(w.sort_capped);
        CHECK(all_done(w));
        CHECK(chain_sorted(w));

        const std::vector<Point2> targets = target_positions(sc);
        for (const RobotState& r : w.robots)
            CHECK(dist(r.pos, targets[r.index]) <= sc.params.robot_radius);
        CHECK(w.robot(w.idx_min).odometer == 0.0);
        CHECK(w.robot(w.idx_max).odometer == 0.0);
    }
}

TEST_CASE("run_to_phase respects its budget") {
    World w = make_world(generate_scenario(15, 1, default_params()), {}, nullptr);
    const RunResult res = run_to_phase(w, Phase::Done, 3);
    CHECK_FALSE(res.stopped);
    CHECK(res.ticks_used == 3);
}

TEST_CASE("chain worlds report their labels in list order") {
    World w = make_chain_world({1, 3, 2, 4}, default_params());
    CHECK(chain_labels(w) == std::vector<int>{1, 3, 2, 4});
    CHECK_FALSE(chain_sorted(w));
    REQUIRE(run_full(w).stopped);
    CHECK(chain_labels(w) == std::vector<int>{1, 2, 3, 4});
    CHECK(chain_sorted(w));
}

TEST_CASE("chain worlds validate their endpoints") {
    CHECK_THROWS(make_chain_world({2, 1, 3}, default_params()));
    CHECK_THROWS(make_chain_world({1, 3, 2}, default_params()));
}
