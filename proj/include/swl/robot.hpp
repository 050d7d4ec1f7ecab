#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "swl/geometry.hpp"
#include "swl/message.hpp"
#include "swl/metrics.hpp"
#include "swl/wave.hpp"

namespace swl {

inline constexpr double kInfDist = std::numeric_limits<double>::infinity();

struct ElectionState {
    bool claims_started = false;
    int best_min = 0;
    int best_max = 0;
    bool min_wave_finished = false;
    bool max_wave_finished = false;
    bool max_done_seen = false;
    bool leader_done_sent = false;
    bool release_started = false;
    long release_tick = -1;
};

/// Shared by the shortest-path tree and the contraction tree.
struct RelaxState {
    double dist = kInfDist;
    int parent = -1;  // robot index
    int parent_label = -1;
    bool dirty = false;
    std::vector<int> children;  // indices, maintained from DistUpdate parent fields

    // initiator-side check-wave bookkeeping
    int check_seq = 0;
    int clean_streak = 0;
    bool converged = false;

    void add_child(int idx) {
        for (int c : children)
            if (c == idx) return;
        children.push_back(idx);
    }
    void drop_child(int idx) { std::erase(children, idx); }
};

struct PathState {
    bool on_path = false;
    int pred_label = -1;
    int succ_label = -1;
    bool announce_started = false;
    bool tree_done_seen = false;
};

struct ContractState {
    bool grant_started = false;   // r_min only
    bool may_move = false;
    bool echo_released = false;
    long next_probe_tick = 0;     // r_min retry schedule
    int probe_seq = 0;
    bool integration_done = false;  // r_min: a completeness wave folded clean
    int integ_seq = 0;

    // integration, owner side
    int offer_outstanding_to = -1;  // robot index, -1 when free
    // integration, exterior side
    bool offer_pending = false;
    int offer_owner_label = -1;
    int offer_succ_label = -1;
    int offer_owner_index = -1;
    long splice_apply_tick = -1;
};

enum class SortSt {
    Idle,
    MinAwaitReady,
    MinAwaitRet,
    MinCapped,
    NeedReady,
    AwaitInit,
    MasterAwaitReady,
    MasterAwaitRet,
    SlaveAwaitReady,
    SlaveAwaitRet,
    MaxNeedReady,
    MaxAwaitInit,
    AwaitTerminate,
    Placing,
};

struct SortState {
    SortSt st = SortSt::Idle;
    int known_n = -1;
    int round = 0;
    bool master_parity = true;  // r_min's alternating token m
    int waves_launched = 0;
    // per-round scratch
    int init_l = 0;
    bool init_sorted = true;
    bool flag_out = true;
    // swap motion
    bool swapping = false;
    bool sidestep = false;
    bool waypoint_reached = false;
    Point2 swap_waypoint{};
    Point2 swap_target{};
    int swap_partner_label = -1;
    int sorted_streak = 0;  // r_max confirmation count
    int place_index = -1;
};

struct RobotState {
    int index = -1;
    int label = 0;
    Point2 pos{};
    Phase phase = Phase::LeaderElection;
    double odometer = 0.0;
    std::optional<Point2> motion_target;

    std::vector<Message> inbox;    // delivered this tick, drained by the controller
    std::deque<Message> buffer;    // unconsumed READY/INIT/RET/Terminate/Place

    WaveEngine waves;
    ElectionState election;
    RelaxState sp;   // squared-weight shortest-path tree
    RelaxState ct;   // contraction tree
    PathState path;
    ContractState contract;
    SortState sort;

    bool is_endpoint() const {
        return label == election.best_min || label == election.best_max;
    }
};

}  // namespace swl
