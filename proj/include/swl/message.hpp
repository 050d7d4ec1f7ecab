#pragma once

#include <compare>
#include <cstdint>

namespace swl {

inline constexpr int kBroadcast = -1;

enum class MsgType : std::uint8_t {
    WaveForward,
    WaveEcho,
    LeaderDone,  // flood: r_max's extremum wave completed
    TreeDone,    // flood: routing tree converged, r_max may start PathJoin
    DistUpdate,  // distance relaxation announcement (f1 selects the contraction tree)
    PathJoin,
    Offer,
    Accept,
    Reject,
    TermProbe,  // contraction-done + straightness probe along the path
    TermEcho,
    Ready,
    Init,
    Ret,
    Terminate,
    Place,  // final slot assignment chain
    Count,
};

const char* msg_type_name(MsgType t);

enum class WaveFamily : std::uint8_t {
    MinClaim,
    MaxClaim,
    Release,
    PathAnnounce,
    SpCheck,
    CtCheck,
    MoveGrant,
    PathComplete,  // counts robots, folds whether any is still off the path
    Count,
};

struct WaveId {
    WaveFamily family = WaveFamily::MinClaim;
    int initiator_label = 0;
    int seq = 0;

    auto operator<=>(const WaveId&) const = default;
};

/// Fixed-size payload: at most two labels, one scalar, and two booleans.
struct Message {
    int sender = -1;     // robot index
    int recipient = -1;  // robot index or kBroadcast
    MsgType type = MsgType::WaveForward;
    WaveId wave{};
    int a = 0;
    int b = 0;
    double x = 0.0;
    bool f1 = false;
    bool f2 = false;
    long sent_tick = 0;
};

}  // namespace swl
