#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "swl/message.hpp"
#include "swl/trace.hpp"

namespace swl {

enum class Phase : int {
    LeaderElection = 0,
    PathBuild = 1,
    ContractStraighten = 2,
    WaveSort = 3,
    Done = 4,
};

const char* phase_name(Phase p);

inline constexpr int kNumPhases = 4;  // Done accrues no ticks
inline constexpr int kNumMsgTypes = static_cast<int>(MsgType::Count);

/// The quantities the scaling claims are stated in. Broadcast counts as one
/// message; messages_delivered is the stricter per-recipient count.
struct RunMetrics {
    int n = 0;
    std::uint64_t seed = 0;
    long ticks_total = 0;
    std::array<long, kNumPhases> ticks_phase{};
    long messages_total = 0;
    long messages_delivered = 0;
    std::array<long, kNumMsgTypes> messages_by_kind{};
    std::array<long, kNumPhases> messages_by_phase{};
    double travel_total = 0.0;
    double travel_max_single_robot = 0.0;
    long waves_used = 0;
    long swaps_performed = 0;
    double diameter = 0.0;  // D, fixed at construction

    void begin(int n_, std::uint64_t seed_, double diameter_);
    void record(const TraceEvent& e);
    /// Called once per simulation tick after all events of that tick.
    void end_tick();

    long sort_messages() const { // READY + INIT + RET
        return messages_by_kind[static_cast<int>(MsgType::Ready)] +
               messages_by_kind[static_cast<int>(MsgType::Init)] +
               messages_by_kind[static_cast<int>(MsgType::Ret)];
    }

private:
    std::vector<Phase> robot_phase_;
    std::vector<double> robot_travel_;
    long last_tick_seen_ = -1;
    Phase global_phase() const;
};

std::string export_csv(const std::vector<RunMetrics>& rows);
std::string csv_header();
std::string csv_row(const RunMetrics& m);

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool ok = false;  // false when fewer than two distinct x values
};

LinFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace swl
