#include "swl/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace swl {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::LeaderElection: return "leader";
        case Phase::PathBuild: return "path";
        case Phase::ContractStraighten: return "contract_straighten";
        case Phase::WaveSort: return "sort";
        case Phase::Done: return "done";
    }
    return "?";
}

const char* msg_type_name(MsgType t) {
    switch (t) {
        case MsgType::WaveForward: return "wave_forward";
        case MsgType::WaveEcho: return "wave_echo";
        case MsgType::LeaderDone: return "leader_done";
        case MsgType::TreeDone: return "tree_done";
        case MsgType::DistUpdate: return "dist_update";
        case MsgType::PathJoin: return "path_join";
        case MsgType::Offer: return "offer";
        case MsgType::Accept: return "accept";
        case MsgType::Reject: return "reject";
        case MsgType::TermProbe: return "term_probe";
        case MsgType::TermEcho: return "term_echo";
        case MsgType::Ready: return "ready";
        case MsgType::Init: return "init";
        case MsgType::Ret: return "ret";
        case MsgType::Terminate: return "terminate";
        case MsgType::Place: return "place";
        case MsgType::Count: break;
    }
    return "?";
}

const char* trace_kind_name(TraceKind k) {
    switch (k) {
        case TraceKind::Send: return "send";
        case TraceKind::Deliver: return "deliver";
        case TraceKind::Phase: return "phase";
        case TraceKind::Move: return "move";
        case TraceKind::Swap: return "swap";
        case TraceKind::Integrate: return "integrate";
        case TraceKind::GtmClip: return "gtm_clip";
        case TraceKind::WaveStart: return "wave_start";
        case TraceKind::Terminate: return "terminate";
    }
    return "?";
}

void JsonlSink::emit(const TraceEvent& e) {
    // hand-rolled; the event stream is hot and the schema is flat
    out_ << "{\"tick\":" << e.tick << ",\"kind\":\"" << trace_kind_name(e.kind)
         << "\",\"robot\":" << e.robot << ",\"a\":" << e.a << ",\"b\":" << e.b
         << ",\"x\":" << e.x << "}\n";
}

void RunMetrics::begin(int n_, std::uint64_t seed_, double diameter_) {
    n = n_;
    seed = seed_;
    diameter = diameter_;
    robot_phase_.assign(n_, Phase::LeaderElection);
    robot_travel_.assign(n_, 0.0);
}

Phase RunMetrics::global_phase() const {
    Phase p = Phase::Done;
    for (Phase rp : robot_phase_) p = std::min(p, rp);
    return p;
}

void RunMetrics::record(const TraceEvent& e) {
    assert(e.tick >= last_tick_seen_ && "events must arrive in tick order");
    last_tick_seen_ = e.tick;
    switch (e.kind) {
        case TraceKind::Send: {
            ++messages_total;
            ++messages_by_kind[e.a];
            const Phase p = e.robot >= 0 ? robot_phase_[e.robot] : Phase::LeaderElection;
            if (p != Phase::Done) ++messages_by_phase[static_cast<int>(p)];
            break;
        }
        case TraceKind::Deliver:
            ++messages_delivered;
            break;
        case TraceKind::Phase:
            robot_phase_[e.robot] = static_cast<Phase>(e.a);
            break;
        case TraceKind::Move:
            travel_total += e.x;
            robot_travel_[e.robot] += e.x;
            travel_max_single_robot =
                std::max(travel_max_single_robot, robot_travel_[e.robot]);
            break;
        case TraceKind::Swap:
            ++swaps_performed;
            break;
        case TraceKind::WaveStart:
            waves_used = std::max(waves_used, static_cast<long>(e.a));
            break;
        default:
            break;
    }
}

void RunMetrics::end_tick() {
    const Phase p = global_phase();
    if (p != Phase::Done) ++ticks_phase[static_cast<int>(p)];
    ++ticks_total;
}

std::string csv_header() {
    std::ostringstream os;
    os << "n,seed,ticks_total";
    for (int p = 0; p < kNumPhases; ++p) os << ",ticks_" << phase_name(static_cast<Phase>(p));
    os << ",messages_total,messages_delivered";
    for (int k = 0; k < kNumMsgTypes; ++k) os << ",msgs_" << msg_type_name(static_cast<MsgType>(k));
    for (int p = 0; p < kNumPhases; ++p) os << ",msgs_" << phase_name(static_cast<Phase>(p));
    os << ",travel_total,travel_max_single_robot,waves_used,swaps_performed,D";
    return os.str();
}

std::string csv_row(const RunMetrics& m) {
    std::ostringstream os;
    os.precision(17);
    os << m.n << ',' << m.seed << ',' << m.ticks_total;
    for (long t : m.ticks_phase) os << ',' << t;
    os << ',' << m.messages_total << ',' << m.messages_delivered;
    for (long c : m.messages_by_kind) os << ',' << c;
    for (long c : m.messages_by_phase) os << ',' << c;
    os << ',' << m.travel_total << ',' << m.travel_max_single_robot << ','
       << m.waves_used << ',' << m.swaps_performed << ',' << m.diameter;
    return os.str();
}

std::string export_csv(const std::vector<RunMetrics>& rows) {
    std::string out = csv_header() + "\n";
    for (const auto& r : rows) out += csv_row(r) + "\n";
    return out;
}

LinFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    LinFit fit;
    const std::size_t n = xs.size();
    if (n < 2 || n != ys.size()) return fit;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = fit.slope * xs[i] + fit.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
    }
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    fit.ok = true;
    return fit;
}

}  // namespace swl
