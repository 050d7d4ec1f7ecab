#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "swl/message.hpp"

namespace swl {

/// Payload echoed up the wave tree; folded with an associative combiner.
struct WavePayload {
    double value = 0.0;
    bool flag = false;
};

struct WaveConfig {
    /// Filtered neighbor indices of a robot; the subgraph these induce must be
    /// connected and contain the initiator for the wave to complete.
    std::function<std::vector<int>(int self)> neighbors;
    /// A robot may only finish (send its echo) while this holds.
    std::function<bool(int self)> forward_guard = [](int) { return true; };
    std::function<WavePayload(WavePayload, WavePayload)> fold =
        [](WavePayload a, WavePayload b) {
            return WavePayload{a.value + b.value, a.flag || b.flag};
        };
    /// Contribution folded in exactly once, when the robot finishes. Side
    /// effects here are the hook for clear-on-echo bookkeeping.
    std::function<WavePayload(int self)> local_payload = [](int) { return WavePayload{}; };
};

struct WaveState {
    int predecessor = -1;  // -1 for the initiator
    std::set<int> pending;
    bool finished = false;
    bool is_initiator = false;
    WavePayload acc{};
};

struct WaveActions {
    bool forward_broadcast = false;  // emit WaveForward as one broadcast
    int forward_exclude = -1;        // receiver index that must ignore it
    int echo_to = -1;                // emit WaveEcho with echo_payload
    WavePayload echo_payload{};
    bool finished_now = false;       // this robot finished (echoed or initiator done)
    bool initiator_finished = false;
    WavePayload folded{};
    bool unknown_wave = false;       // echo for a wave never seen: protocol bug
};

/// Chang's echo algorithm, one instance per robot. Forwards are broadcast with
/// the predecessor excluded; a forward arriving over a cross edge counts as
/// that neighbor's echo-equivalent.
class WaveEngine {
public:
    WaveActions start(int self, const WaveId& id, const WaveConfig& cfg);
    WaveActions on_forward(int self, int from, const WaveId& id, const WaveConfig& cfg);
    WaveActions on_echo(int self, int from, const WaveId& id, WavePayload payload,
                        const WaveConfig& cfg);
    /// Re-check a held forward_guard; emits the pending echo once it passes.
    WaveActions poll(int self, const WaveId& id, const WaveConfig& cfg);

    /// Drop state for waves of a family older than min_seq_keep. Only safe
    /// once no message of those waves can still be in flight.
    void prune(WaveFamily family, int min_seq_keep);

    bool seen(const WaveId& id) const { return states_.count(id) != 0; }
    bool finished(const WaveId& id) const;
    bool pending_empty(const WaveId& id) const;
    int predecessor(const WaveId& id) const;
    std::vector<WaveId> unfinished() const;

private:
    WaveActions try_complete(int self, const WaveId& id, WaveState& st, const WaveConfig& cfg);

    std::map<WaveId, WaveState> states_;
};

}  // namespace swl
