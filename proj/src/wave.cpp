#include "swl/wave.hpp"

namespace swl {

bool WaveEngine::finished(const WaveId& id) const {
    auto it = states_.find(id);
    return it != states_.end() && it->second.finished;
}

bool WaveEngine::pending_empty(const WaveId& id) const {
    auto it = states_.find(id);
    return it != states_.end() && it->second.pending.empty();
}

int WaveEngine::predecessor(const WaveId& id) const {
    auto it = states_.find(id);
    return it == states_.end() ? -1 : it->second.predecessor;
}

void WaveEngine::prune(WaveFamily family, int min_seq_keep) {
    std::erase_if(states_, [&](const auto& kv) {
        return kv.first.family == family && kv.first.seq < min_seq_keep;
    });
}

std::vector<WaveId> WaveEngine::unfinished() const {
    std::vector<WaveId> out;
    for (const auto& [id, st] : states_)
        if (!st.finished) out.push_back(id);
    return out;
}

WaveActions WaveEngine::try_complete(int self, const WaveId&, WaveState& st,
                                     const WaveConfig& cfg) {
    WaveActions act;
    if (st.finished || !st.pending.empty() || !cfg.forward_guard(self)) return act;
    st.finished = true;
    st.acc = cfg.fold(st.acc, cfg.local_payload(self));
    act.finished_now = true;
    if (st.is_initiator) {
        act.initiator_finished = true;
        act.folded = st.acc;
    } else {
        act.echo_to = st.predecessor;
        act.echo_payload = st.acc;
    }
    return act;
}

WaveActions WaveEngine::start(int self, const WaveId& id, const WaveConfig& cfg) {
    WaveState& st = states_[id];
    st.is_initiator = true;
    for (int v : cfg.neighbors(self)) st.pending.insert(v);
    WaveActions act = try_complete(self, id, st, cfg);
    act.forward_broadcast = true;
    return act;
}

WaveActions WaveEngine::on_forward(int self, int from, const WaveId& id,
                                   const WaveConfig& cfg) {
    auto it = states_.find(id);
    if (it != states_.end()) {
        // cross edge: the neighbor got the wave elsewhere first
        WaveState& st = it->second;
        if (st.pending.erase(from) > 0) return try_complete(self, id, st, cfg);
        return {};
    }
    const std::vector<int> nbrs = cfg.neighbors(self);
    bool from_filtered = false;
    for (int v : nbrs) from_filtered |= (v == from);
    if (!from_filtered) return {};  // edge excluded by the wave's filter
    WaveState& st = states_[id];
    st.predecessor = from;
    for (int v : nbrs)
        if (v != from) st.pending.insert(v);
    WaveActions act = try_complete(self, id, st, cfg);
    // Forward exactly once per robot even with no one left to reach; the
    // excluded predecessor and unfiltered receivers ignore it, and the
    // uniform count (n forwards, n-1 echoes) is what the metrics assert.
    act.forward_broadcast = true;
    act.forward_exclude = from;
    return act;
}

WaveActions WaveEngine::on_echo(int self, int from, const WaveId& id, WavePayload payload,
                                const WaveConfig& cfg) {
    auto it = states_.find(id);
    if (it == states_.end()) {
        WaveActions act;
        act.unknown_wave = true;
        return act;
    }
    WaveState& st = it->second;
    if (st.pending.erase(from) > 0) st.acc = cfg.fold(st.acc, payload);
    return try_complete(self, id, st, cfg);
}

WaveActions WaveEngine::poll(int self, const WaveId& id, const WaveConfig& cfg) {
    auto it = states_.find(id);
    if (it == states_.end()) return {};
    return try_complete(self, id, it->second, cfg);
}

}  // namespace swl
