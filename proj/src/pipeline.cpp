#include "swl/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace swl {

RunResult run_to_phase(World& w, Phase target, long max_ticks) {
    return run_until(
        w,
        [target](const World& ww) {
            for (const RobotState& r : ww.robots)
                if (r.phase < target) return false;
            return true;
        },
        max_ticks);
}

RunResult run_full(World& w, long max_ticks) {
    if (max_ticks < 0) max_ticks = default_tick_budget(w.scenario.n);
    return run_until(w, all_done, max_ticks);
}

World make_chain_world(const std::vector<int>& chain, const PhysicalParams& params,
                       const SimOptions& opts, TraceSink* sink, double spacing) {
    const int n = static_cast<int>(chain.size());
    if (n < 2) throw std::invalid_argument("chain needs at least two robots");
    const auto [mn, mx] = std::minmax_element(chain.begin(), chain.end());
    if (chain.front() != *mn || chain.back() != *mx)
        throw std::invalid_argument("chain must start at the min label and end at the max");
    if (spacing > params.comm_range)
        throw std::invalid_argument("spacing breaks chain connectivity");

    Scenario s;
    s.n = n;
    s.seed = 0;
    s.params = params;
    s.labels = chain;
    s.positions.resize(n);
    for (int i = 0; i < n; ++i) s.positions[i] = {spacing * i, 0.0};

    World w = make_world(s, opts, sink);
    for (int i = 0; i < n; ++i) {
        RobotState& r = w.robots[i];
        r.election.best_min = chain.front();
        r.election.best_max = chain.back();
        r.path.on_path = true;
        r.path.pred_label = i > 0 ? chain[i - 1] : -1;
        r.path.succ_label = i + 1 < n ? chain[i + 1] : -1;
        r.phase = Phase::WaveSort;
        r.sort.known_n = n;
        if (i == 0)
            r.sort.st = SortSt::MinAwaitReady;
        else if (i == n - 1)
            r.sort.st = SortSt::MaxNeedReady;
        else
            r.sort.st = SortSt::NeedReady;
        w.emit({0, TraceKind::Phase, i, static_cast<int>(Phase::WaveSort), 0, 0.0});
    }
    w.chain_at_sort_start = chain;
    return w;
}

std::vector<int> chain_labels(const World& w) {
    std::vector<int> labs;
    for (int idx : chain_order(w)) labs.push_back(w.robots[idx].label);
    return labs;
}

bool chain_sorted(const World& w) {
    const std::vector<int> labs = chain_labels(w);
    if (labs.size() != w.robots.size()) return false;
    return std::is_sorted(labs.begin(), labs.end());
}

}  // namespace swl
