#include "swl/controller.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "swl/world.hpp"

namespace swl {
namespace {

// Check waves that must fold clean before a relaxation counts as converged;
// latency_max more are added so no update can still be in flight.
constexpr int kCleanBase = 2;
constexpr int kProbeRetryTicks = 30;
// Straightness is only demanded for this many probes, then the gate relaxes
// to contraction-completeness alone; sorting is correct either way.
constexpr int kStrictProbes = 40;
constexpr int kClipHalvings = 20;
constexpr int kConfirmWaves = 2;  // consecutive sorted verdicts r_max requires
// Old check-wave state this far behind the newest sequence number is garbage.
constexpr int kCheckKeepBehind = 4;

struct Ctl {
    World& w;
    RobotState& r;
    const int self;

    Ctl(World& w_, int i) : w(w_), r(w_.robots[i]), self(i) {}

    int label_of(int idx) const { return w.robots[idx].label; }
    int idx_of_label(int lab) const {
        auto it = w.label_to_index.find(lab);
        return it == w.label_to_index.end() ? -1 : it->second;
    }
    Point2 pos_of(int idx) const { return w.robots[idx].pos; }
    bool in_range(int j) const { return w.in_range(self, j); }
    bool is_min() const { return r.label == r.election.best_min; }
    bool is_max() const { return r.label == r.election.best_max; }
    bool is_anchor() const { return self == w.idx_min || self == w.idx_max; }

    void post(int to, MsgType t, int a = 0, int b = 0, double x = 0.0, bool f1 = false,
              bool f2 = false) {
        Message m;
        m.sender = self;
        m.recipient = to;
        m.type = t;
        m.a = a;
        m.b = b;
        m.x = x;
        m.f1 = f1;
        m.f2 = f2;
        w.send(m);
    }

    // ------------------------------------------------------------------ waves

    WaveConfig cfg_flood() {
        WaveConfig c;
        c.neighbors = [this](int s) { return w.graph.adj[s]; };
        return c;
    }

    WaveConfig cfg_check(bool contraction) {
        WaveConfig c;
        c.neighbors = [this](int s) { return w.graph.adj[s]; };
        c.forward_guard = [this, contraction](int s) {
            const RelaxState& rs = contraction ? w.robots[s].ct : w.robots[s].sp;
            return rs.dist < kInfDist;
        };
        c.local_payload = [this, contraction](int s) {
            RelaxState& rs = contraction ? w.robots[s].ct : w.robots[s].sp;
            WavePayload p{0.0, rs.dirty};
            rs.dirty = false;
            return p;
        };
        return c;
    }

    WaveConfig cfg_grant() {
        WaveConfig c;
        c.neighbors = [this](int s) {
            const RobotState& q = w.robots[s];
            std::vector<int> nb = q.ct.children;
            if (q.ct.parent >= 0) nb.push_back(q.ct.parent);
            std::sort(nb.begin(), nb.end());
            return nb;
        };
        c.forward_guard = [this](int s) {
            const RobotState& q = w.robots[s];
            if (q.path.on_path || q.ct.parent < 0) return true;
            const RobotState& p = w.robots[q.ct.parent];
            if (p.path.on_path) return true;
            // keep the chain towed: echo (and thereby free the parent to
            // move) only once this robot has closed in on it
            return dist(q.pos, p.pos) <= w.params.comm_range * 0.5;
        };
        return c;
    }

    WaveConfig cfg_complete() {
        WaveConfig c;
        c.neighbors = [this](int s) { return w.graph.adj[s]; };
        c.local_payload = [this](int s) {
            return WavePayload{1.0, !w.robots[s].path.on_path};
        };
        return c;
    }

    WaveConfig cfg_for(const WaveId& id) {
        switch (id.family) {
            case WaveFamily::SpCheck: return cfg_check(false);
            case WaveFamily::CtCheck: return cfg_check(true);
            case WaveFamily::MoveGrant: return cfg_grant();
            case WaveFamily::PathComplete: return cfg_complete();
            default: return cfg_flood();
        }
    }

    void wave_event(const WaveId& id, const WaveActions& act) {
        if (act.unknown_wave) {
            // pruned-family echoes can trail in late; anything else is a bug
            if (id.family != WaveFamily::SpCheck && id.family != WaveFamily::CtCheck &&
                id.family != WaveFamily::PathComplete)
                w.fail("echo for unknown wave at robot " + std::to_string(self));
            return;
        }
        if (act.forward_broadcast) {
            Message m;
            m.sender = self;
            m.recipient = kBroadcast;
            m.type = MsgType::WaveForward;
            m.wave = id;
            m.b = act.forward_exclude;
            w.send(m);
        }
        if (act.echo_to >= 0) {
            Message m;
            m.sender = self;
            m.recipient = act.echo_to;
            m.type = MsgType::WaveEcho;
            m.wave = id;
            m.x = act.echo_payload.value;
            m.f1 = act.echo_payload.flag;
            w.send(m);
        }
        if (act.finished_now) {
            if (id.family == WaveFamily::Release) enter_phase(Phase::PathBuild);
            if (id.family == WaveFamily::PathAnnounce) enter_phase(Phase::ContractStraighten);
        }
        if (act.initiator_finished) {
            switch (id.family) {
                case WaveFamily::MinClaim: r.election.min_wave_finished = true; break;
                case WaveFamily::MaxClaim: r.election.max_wave_finished = true; break;
                case WaveFamily::SpCheck: check_result(r.sp, act.folded, false); break;
                case WaveFamily::CtCheck: check_result(r.ct, act.folded, true); break;
                case WaveFamily::PathComplete:
                    if (!act.folded.flag) r.contract.integration_done = true;
                    break;
                default: break;
            }
        }
    }

    void start_wave(const WaveId& id) { wave_event(id, r.waves.start(self, id, cfg_for(id))); }

    void poll_waves() {
        for (const WaveId& id : r.waves.unfinished()) {
            switch (id.family) {
                case WaveFamily::SpCheck:
                case WaveFamily::CtCheck:
                case WaveFamily::MoveGrant:
                    wave_event(id, r.waves.poll(self, id, cfg_for(id)));
                    break;
                default:
                    break;  // claim waves may stall; release waves never hold
            }
        }
    }

    void on_wave_forward(const Message& m) {
        if (m.b == self) return;  // we are the sender's predecessor in this wave
        const WaveId& id = m.wave;
        switch (id.family) {
            case WaveFamily::MinClaim:
                if (id.initiator_label > r.election.best_min) return;  // dominated
                r.election.best_min = id.initiator_label;
                break;
            case WaveFamily::MaxClaim:
                if (id.initiator_label < r.election.best_max) return;
                r.election.best_max = id.initiator_label;
                break;
            case WaveFamily::SpCheck:
            case WaveFamily::CtCheck:
            case WaveFamily::PathComplete:
                r.waves.prune(id.family, id.seq - kCheckKeepBehind);
                break;
            default:
                break;
        }
        wave_event(id, r.waves.on_forward(self, m.sender, id, cfg_for(id)));
    }

    void on_wave_echo(const Message& m) {
        wave_event(m.wave,
                   r.waves.on_echo(self, m.sender, m.wave, {m.x, m.f1}, cfg_for(m.wave)));
    }

    // ------------------------------------------------------------ transitions

    void enter_phase(Phase p) {
        r.phase = p;
        r.motion_target.reset();
        w.emit({w.tick, TraceKind::Phase, self, static_cast<int>(p), 0, 0.0});
        if (p == Phase::PathBuild && is_min()) {
            r.sp.dist = 0.0;
            post(kBroadcast, MsgType::DistUpdate, /*a=*/-1, 0, /*x=*/0.0, /*f1=*/false);
            r.sp.check_seq = 1;
            start_wave({WaveFamily::SpCheck, r.label, r.sp.check_seq});
        }
        if (p == Phase::ContractStraighten && is_min()) {
            r.ct.dist = 0.0;
            post(kBroadcast, MsgType::DistUpdate, /*a=*/-1, 0, /*x=*/0.0, /*f1=*/true);
            r.ct.check_seq = 1;
            start_wave({WaveFamily::CtCheck, r.label, r.ct.check_seq});
        }
        if (p == Phase::WaveSort) {
            if (is_min()) {
                r.sort.st = SortSt::MinAwaitReady;
                w.chain_at_sort_start.clear();
                for (int idx : chain_order(w)) w.chain_at_sort_start.push_back(label_of(idx));
            } else if (is_max()) {
                r.sort.st = SortSt::MaxNeedReady;
            } else {
                r.sort.st = SortSt::NeedReady;
            }
        }
    }

    void check_result(RelaxState& rs, WavePayload folded, bool contraction) {
        if (!folded.flag)
            ++rs.clean_streak;
        else
            rs.clean_streak = 0;
        if (rs.clean_streak >= kCleanBase + w.opts.latency_max) {
            rs.converged = true;
            if (!contraction) {
                r.path.tree_done_seen = true;
                post(kBroadcast, MsgType::TreeDone);
            } else {
                r.contract.grant_started = true;
                r.contract.may_move = true;
                r.contract.next_probe_tick = w.tick + 1;
                start_wave({WaveFamily::MoveGrant, r.label, 0});
            }
            return;
        }
        ++rs.check_seq;
        start_wave({contraction ? WaveFamily::CtCheck : WaveFamily::SpCheck, r.label,
                    rs.check_seq});
    }

    // -------------------------------------------------------------- messages

    void on_leader_done(const Message&) {
        if (r.election.max_done_seen) return;
        r.election.max_done_seen = true;
        post(kBroadcast, MsgType::LeaderDone);
    }

    void on_tree_done(const Message&) {
        if (r.path.tree_done_seen) return;
        r.path.tree_done_seen = true;
        post(kBroadcast, MsgType::TreeDone);
        if (is_max()) {
            r.path.on_path = true;
            r.path.pred_label = r.sp.parent_label;
            post(r.sp.parent, MsgType::PathJoin);
        }
    }

    void on_dist_update(const Message& m) {
        RelaxState& rs = m.f1 ? r.ct : r.sp;
        const int sender_lab = label_of(m.sender);
        if (m.a == r.label)
            rs.add_child(m.sender);
        else
            rs.drop_child(m.sender);
        double wgt;
        if (m.f1) {
            const bool list_link =
                sender_lab == r.path.pred_label || sender_lab == r.path.succ_label;
            wgt = list_link ? 0.0 : dist(r.pos, pos_of(m.sender));
        } else {
            wgt = squared_dist(r.pos, pos_of(m.sender));
        }
        const double cand = m.x + wgt;
        if (cand < rs.dist) {
            rs.dist = cand;
            rs.parent = m.sender;
            rs.parent_label = sender_lab;
            rs.dirty = true;
            post(kBroadcast, MsgType::DistUpdate, /*a=*/sender_lab, 0, /*x=*/cand, m.f1);
        }
    }

    void on_path_join(const Message& m) {
        r.path.on_path = true;
        r.path.succ_label = label_of(m.sender);
        if (is_min()) {
            r.path.announce_started = true;
            start_wave({WaveFamily::PathAnnounce, r.label, 0});
        } else {
            r.path.pred_label = r.sp.parent_label;
            post(r.sp.parent, MsgType::PathJoin);
        }
    }

    void on_offer(const Message& m) {
        if (r.path.on_path || r.contract.offer_pending) {
            post(m.sender, MsgType::Reject);
            return;
        }
        r.contract.offer_pending = true;
        r.contract.offer_owner_label = m.a;
        r.contract.offer_succ_label = m.b;
        r.contract.offer_owner_index = m.sender;
        r.contract.splice_apply_tick = w.tick + 1;
        r.motion_target.reset();
        post(m.sender, MsgType::Accept, m.a, m.b);
        post(idx_of_label(m.b), MsgType::Accept, m.a, m.b);
    }

    void on_accept(const Message& m) {
        const int joiner = label_of(m.sender);
        if (m.a == r.label) {  // we own the edge being split
            r.path.succ_label = joiner;
            r.contract.offer_outstanding_to = -1;
        } else if (m.b == r.label) {  // we were the edge's far end
            r.path.pred_label = joiner;
        }
    }

    void on_reject(const Message&) { r.contract.offer_outstanding_to = -1; }

    void apply_splice() {
        r.contract.splice_apply_tick = -1;
        r.contract.offer_pending = false;
        r.path.on_path = true;
        r.path.pred_label = r.contract.offer_owner_label;
        r.path.succ_label = r.contract.offer_succ_label;
        w.emit({w.tick, TraceKind::Integrate, self, r.contract.offer_owner_label, r.label,
                0.0});
    }

    bool no_offpath_child() const {
        for (int j : w.graph.adj[self]) {
            const RobotState& o = w.robots[j];
            if (!o.path.on_path && o.ct.parent == self) return false;
        }
        return true;
    }

    bool edge_monotone() const {
        const int sj = idx_of_label(r.path.succ_label);
        if (sj < 0) return false;
        return dot(pos_of(sj) - r.pos, w.p_rmax - w.p_rmin) > 0.0;
    }

    void on_term_probe(const Message& m) {
        if (r.phase != Phase::ContractStraighten || !r.path.on_path) return;
        if (!no_offpath_child()) return;
        if (is_max()) {
            const int n = m.a + 1;
            r.sort.known_n = n;
            post(idx_of_label(r.path.pred_label), MsgType::TermEcho, 0, n);
            enter_phase(Phase::WaveSort);
            return;
        }
        if (m.f1 && !edge_monotone()) return;
        post(idx_of_label(r.path.succ_label), MsgType::TermProbe, m.a + 1, 0, 0.0, m.f1);
    }

    void on_term_echo(const Message& m) {
        if (r.phase != Phase::ContractStraighten) return;  // duplicate chain
        r.sort.known_n = m.b;
        if (!is_min()) post(idx_of_label(r.path.pred_label), MsgType::TermEcho, 0, m.b);
        enter_phase(Phase::WaveSort);
    }

    // ----------------------------------------------------------------- inbox

    void drain() {
        for (const Message& m : r.inbox) {
            switch (m.type) {
                case MsgType::WaveForward: on_wave_forward(m); break;
                case MsgType::WaveEcho: on_wave_echo(m); break;
                case MsgType::LeaderDone: on_leader_done(m); break;
                case MsgType::TreeDone: on_tree_done(m); break;
                case MsgType::DistUpdate: on_dist_update(m); break;
                case MsgType::PathJoin: on_path_join(m); break;
                case MsgType::Offer: on_offer(m); break;
                case MsgType::Accept: on_accept(m); break;
                case MsgType::Reject: on_reject(m); break;
                case MsgType::TermProbe: on_term_probe(m); break;
                case MsgType::TermEcho: on_term_echo(m); break;
                case MsgType::Ready:
                case MsgType::Init:
                case MsgType::Ret:
                case MsgType::Terminate:
                case MsgType::Place:
                    r.buffer.push_back(m);
                    break;
                default: break;
            }
            if (w.failed) return;
        }
    }

    std::optional<Message> take(MsgType t, int from_label = -1) {
        for (auto it = r.buffer.begin(); it != r.buffer.end(); ++it) {
            if (it->type != t) continue;
            if (from_label >= 0 && label_of(it->sender) != from_label) continue;
            Message m = *it;
            r.buffer.erase(it);
            return m;
        }
        return std::nullopt;
    }

    // ----------------------------------------------------------- phase ticks

    void election_tick() {
        if (!r.election.claims_started) {
            r.election.claims_started = true;
            start_wave({WaveFamily::MinClaim, r.label, 0});
            start_wave({WaveFamily::MaxClaim, r.label, 0});
        }
        if (r.election.max_wave_finished && !r.election.leader_done_sent) {
            r.election.leader_done_sent = true;
            r.election.max_done_seen = true;
            post(kBroadcast, MsgType::LeaderDone);
        }
        if (r.election.min_wave_finished && r.election.max_done_seen &&
            !r.election.release_started) {
            r.election.release_started = true;
            r.election.release_tick = w.tick;
            start_wave({WaveFamily::Release, r.label, 0});
        }
    }

    // Straightening step: head for the midpoint of the two list neighbors,
    // optionally shortening the step until the incident edges stay clear of
    // every other path edge.
    void gtm_step(bool clip) {
        const int pj = idx_of_label(r.path.pred_label);
        const int sj = idx_of_label(r.path.succ_label);
        if (pj < 0 || sj < 0 || !in_range(pj) || !in_range(sj)) return;
        const Point2 mid = midpoint(pos_of(pj), pos_of(sj));
        if (mid == r.pos) {
            r.motion_target.reset();
            return;
        }
        if (!clip) {
            r.motion_target = mid;
            return;
        }
        const Point2 full = move_towards(r.pos, mid, w.params.max_step());
        Point2 tgt = full;
        double frac = 1.0;
        int iter = 0;
        while (iter < kClipHalvings && crosses_any(tgt, pj, sj)) {
            frac *= 0.5;
            tgt = r.pos + (full - r.pos) * frac;
            ++iter;
        }
        if (iter > 0) w.emit({w.tick, TraceKind::GtmClip, self, 0, 0, frac});
        if (crosses_any(tgt, pj, sj)) {
            r.motion_target.reset();
            return;
        }
        r.motion_target = tgt;
    }

    bool crosses_any(Point2 moved, int pj, int sj) const {
        const Point2 pp = pos_of(pj);
        const Point2 sp = pos_of(sj);
        const double reach = 2.0 * w.params.comm_range;
        for (const PathEdge& e : w.path_edges) {
            if (e.from == self || e.to == self) continue;
            if (dist(e.a, r.pos) > reach && dist(e.b, r.pos) > reach) continue;
            if (e.a == e.b) continue;
            const Segment2 other{e.a, e.b};
            if (pp != moved && segments_properly_intersect({pp, moved}, other)) return true;
            if (moved != sp && segments_properly_intersect({moved, sp}, other)) return true;
        }
        return false;
    }

    void contract_tick() {
        const WaveId grant{WaveFamily::MoveGrant, r.election.best_min, 0};
        if (!r.contract.may_move && r.waves.seen(grant) && r.waves.pending_empty(grant))
            r.contract.may_move = true;

        if (is_min() && r.contract.grant_started && w.tick >= r.contract.next_probe_tick) {
            r.contract.next_probe_tick = w.tick + kProbeRetryTicks;
            if (!r.contract.integration_done) {
                // a robot can splice in behind a probe already in transit, so
                // the chain may only be measured once a graph-wide wave proves
                // everyone has joined; on_path never reverts, which makes a
                // clean fold sound despite concurrent motion
                start_wave({WaveFamily::PathComplete, r.label, ++r.contract.integ_seq});
            } else {
                ++r.contract.probe_seq;
                const bool strict = r.contract.probe_seq <= kStrictProbes;
                if (no_offpath_child() && (!strict || edge_monotone()))
                    post(idx_of_label(r.path.succ_label), MsgType::TermProbe, 1, 0, 0.0,
                         strict);
            }
        }

        if (r.path.on_path) offer_tick();

        // motion
        if (r.path.on_path) {
            if (!is_anchor() && r.contract.may_move) gtm_step(/*clip=*/true);
            return;
        }
        if (!r.contract.may_move) return;
        if (r.contract.offer_pending) {
            r.motion_target.reset();
            return;
        }
        const int p = r.ct.parent;
        if (p < 0) return;
        if (!w.robots[p].path.on_path) {
            r.motion_target = pos_of(p);
            return;
        }
        // the parent has joined the chain: aim for the nearest reachable gap
        double best = kInfDist;
        Point2 best_mid{};
        int anchor = -1;
        for (const PathEdge& e : w.path_edges) {
            const bool near_from = in_range(e.from);
            if (!near_from && !in_range(e.to)) continue;
            const Point2 mid = midpoint(e.a, e.b);
            const double d2 = squared_dist(r.pos, mid);
            if (d2 < best) {
                best = d2;
                best_mid = mid;
                anchor = near_from ? e.from : e.to;
            }
        }
        if (anchor >= 0) {
            r.motion_target = best_mid;
            // hand the child relation to the sensed chain robot so the
            // termination gate keeps seeing it
            r.ct.parent = anchor;
            r.ct.parent_label = label_of(anchor);
        } else {
            r.motion_target = pos_of(p);
        }
    }

    void offer_tick() {
        if (r.contract.offer_outstanding_to >= 0 || r.path.succ_label < 0) return;
        const int sj = idx_of_label(r.path.succ_label);
        if (sj < 0 || !in_range(sj)) return;
        const Point2 mid = midpoint(r.pos, pos_of(sj));
        const double delta = w.params.robot_radius;
        for (int j : w.graph.adj[self]) {
            const RobotState& o = w.robots[j];
            if (o.path.on_path) continue;
            if (squared_dist(o.pos, mid) > delta * delta) continue;
            r.contract.offer_outstanding_to = j;
            post(j, MsgType::Offer, r.label, r.path.succ_label);
            return;
        }
    }

    void begin_swap(int partner_label, bool rightward) {
        const int pj = idx_of_label(partner_label);
        r.sort.swapping = true;
        r.sort.swap_partner_label = partner_label;
        r.sort.swap_target = pos_of(pj);
        r.sort.sidestep = rightward;
        r.sort.waypoint_reached = false;
        if (rightward) {
            const Point2 d = r.sort.swap_target - r.pos;
            if (d == Point2{}) {
                r.sort.sidestep = false;
            } else {
                const Point2 u = normalized(d);
                r.sort.swap_waypoint = midpoint(r.pos, r.sort.swap_target) +
                                       Point2{u.y, -u.x} * (2.0 * w.params.robot_radius);
            }
            w.emit({w.tick, TraceKind::Swap, self, partner_label, r.sort.round, 0.0});
        }
    }

    void place_tick() {
        const Point2 span = w.p_rmax - w.p_rmin;
        const Point2 slot =
            w.p_rmin + span * (static_cast<double>(r.sort.place_index) /
                               static_cast<double>(r.sort.known_n - 1));
        if (r.pos == slot) {
            enter_phase(Phase::Done);
            return;
        }
        r.motion_target = slot;
    }

    void start_place_chain() {
        r.sort.place_index = 0;
        if (r.path.succ_label >= 0)
            post(idx_of_label(r.path.succ_label), MsgType::Place, 1, r.sort.known_n);
        enter_phase(Phase::Done);
    }

    void sort_tick() {
        if (auto m = take(MsgType::Terminate)) {
            r.sort.swapping = false;
            r.motion_target.reset();
            if (is_min()) {
                start_place_chain();
            } else {
                post(idx_of_label(r.path.pred_label), MsgType::Terminate);
                r.sort.st = SortSt::AwaitTerminate;
            }
            return;
        }
        if (auto m = take(MsgType::Place)) {
            r.sort.swapping = false;
            r.sort.place_index = m->a;
            r.sort.known_n = m->b;
            if (r.path.succ_label >= 0 && m->a + 1 < m->b)
                post(idx_of_label(r.path.succ_label), MsgType::Place, m->a + 1, m->b);
            r.sort.st = SortSt::Placing;
        }

        switch (r.sort.st) {
            case SortSt::MinAwaitReady: {
                if (r.sort.waves_launched >= 2 * r.sort.known_n + 10) {
                    // safety valve: more waves than robots means the protocol
                    // is wedged; fall through to placement with what we have
                    w.sort_capped = true;
                    r.sort.st = SortSt::MinCapped;
                    start_place_chain();
                    break;
                }
                if (take(MsgType::Ready, r.path.succ_label)) {
                    ++r.sort.waves_launched;
                    w.emit({w.tick, TraceKind::WaveStart, self, r.sort.waves_launched,
                            r.sort.master_parity ? 1 : 0, 0.0});
                    post(idx_of_label(r.path.succ_label), MsgType::Init, r.label,
                         r.sort.waves_launched, 0.0, r.sort.master_parity, true);
                    r.sort.st = SortSt::MinAwaitRet;
                }
                break;
            }
            case SortSt::MinAwaitRet:
                if (auto m = take(MsgType::Ret, r.path.succ_label)) {
                    // A master neighbor reports the pair minimum, which becomes
                    // our neighbor. A slave neighbor never swaps towards us and
                    // only relays the RET of the pair to its right.
                    if (r.sort.master_parity) r.path.succ_label = m->a;
                    r.sort.master_parity = !r.sort.master_parity;
                    r.sort.st = SortSt::MinAwaitReady;
                }
                break;
            case SortSt::NeedReady: {
                if (r.sort.swapping) break;
                const int pj = idx_of_label(r.path.pred_label);
                if (pj >= 0 && in_range(pj)) {
                    post(pj, MsgType::Ready);
                    r.sort.st = SortSt::AwaitInit;
                }
                break;
            }
            case SortSt::AwaitInit:
                if (auto m = take(MsgType::Init, r.path.pred_label)) {
                    r.sort.init_l = m->a;
                    r.sort.init_sorted = m->f2;
                    r.sort.round = m->b;
                    if (m->f1) {  // we pair to the right as master
                        r.sort.flag_out =
                            m->f2 && r.path.pred_label < r.label && r.label < r.path.succ_label;
                        post(idx_of_label(r.path.pred_label), MsgType::Ret,
                             std::min(r.label, r.path.succ_label), r.sort.round);
                        r.sort.st = SortSt::MasterAwaitReady;
                    } else {
                        r.sort.st = SortSt::SlaveAwaitReady;
                    }
                }
                break;
            case SortSt::MasterAwaitReady:
                if (take(MsgType::Ready, r.path.succ_label)) {
                    post(idx_of_label(r.path.succ_label), MsgType::Init, r.sort.init_l,
                         r.sort.round, 0.0, /*f1=*/false, r.sort.flag_out);
                    r.sort.st = SortSt::MasterAwaitRet;
                }
                break;
            case SortSt::MasterAwaitRet:
                if (auto m = take(MsgType::Ret, r.path.succ_label)) {
                    if (r.path.succ_label < r.label) {
                        begin_swap(r.path.succ_label, /*rightward=*/true);
                        r.path.pred_label = r.path.succ_label;
                        r.path.succ_label = m->a;
                    } else {
                        r.path.pred_label = r.sort.init_l;
                    }
                    r.sort.st = SortSt::NeedReady;
                }
                break;
            case SortSt::SlaveAwaitReady:
                if (take(MsgType::Ready, r.path.succ_label)) {
                    r.sort.flag_out = r.sort.init_sorted && r.path.pred_label < r.label &&
                                      r.label < r.path.succ_label;
                    post(idx_of_label(r.path.succ_label), MsgType::Init,
                         std::max(r.label, r.path.pred_label), r.sort.round, 0.0,
                         /*f1=*/true, r.sort.flag_out);
                    r.sort.st = SortSt::SlaveAwaitRet;
                }
                break;
            case SortSt::SlaveAwaitRet:
                if (auto m = take(MsgType::Ret, r.path.succ_label)) {
                    post(idx_of_label(r.path.pred_label), MsgType::Ret, m->a, r.sort.round);
                    if (r.path.pred_label > r.label) {
                        begin_swap(r.path.pred_label, /*rightward=*/false);
                        r.path.succ_label = r.path.pred_label;
                        r.path.pred_label = r.sort.init_l;
                    } else {
                        r.path.succ_label = m->a;
                    }
                    r.sort.st = SortSt::NeedReady;
                }
                break;
            case SortSt::MaxNeedReady: {
                const int pj = idx_of_label(r.path.pred_label);
                if (pj >= 0 && in_range(pj)) {
                    post(pj, MsgType::Ready);
                    r.sort.st = SortSt::MaxAwaitInit;
                }
                break;
            }
            case SortSt::MaxAwaitInit:
                if (auto m = take(MsgType::Init, r.path.pred_label)) {
                    // f1 set means the sender was a slave, which may swap away
                    // and names max of its pair as our next neighbor; a master
                    // neighbor stays adjacent to us.
                    const int future_pred = m->f1 ? m->a : r.path.pred_label;
                    const bool sorted_now = m->f2 && future_pred < r.label;
                    if (sorted_now)
                        ++r.sort.sorted_streak;
                    else
                        r.sort.sorted_streak = 0;
                    if (r.sort.sorted_streak >= kConfirmWaves) {
                        w.emit({w.tick, TraceKind::Terminate, self, m->b, 0, 0.0});
                        post(idx_of_label(r.path.pred_label), MsgType::Terminate);
                        r.path.pred_label = future_pred;
                        r.sort.st = SortSt::AwaitTerminate;
                    } else {
                        post(idx_of_label(r.path.pred_label), MsgType::Ret, r.label, m->b);
                        r.path.pred_label = future_pred;
                        r.sort.st = SortSt::MaxNeedReady;
                    }
                }
                break;
            default:
                break;
        }

        // motion
        if (r.sort.st == SortSt::Placing) {
            place_tick();
            return;
        }
        if (r.sort.swapping) {
            Point2 goal = r.sort.swap_target;
            if (r.sort.sidestep && !r.sort.waypoint_reached) {
                if (r.pos == r.sort.swap_waypoint)
                    r.sort.waypoint_reached = true;
                else
                    goal = r.sort.swap_waypoint;
            }
            if (r.pos == goal && goal == r.sort.swap_target) {
                r.sort.swapping = false;
                r.motion_target.reset();
            } else {
                r.motion_target = goal;
            }
            return;
        }
        if ((r.sort.st == SortSt::NeedReady || r.sort.st == SortSt::AwaitInit) &&
            !is_anchor()) {
            gtm_step(/*clip=*/false);
        } else {
            r.motion_target.reset();
        }
    }

    void run() {
        if (r.contract.splice_apply_tick == w.tick) apply_splice();
        drain();
        if (w.failed) return;
        switch (r.phase) {
            case Phase::LeaderElection: election_tick(); break;
            case Phase::PathBuild: break;  // purely message-driven
            case Phase::ContractStraighten: contract_tick(); break;
            case Phase::WaveSort: sort_tick(); break;
            case Phase::Done: return;
        }
        poll_waves();
    }
};

}  // namespace

void run_controller(World& w, int i) {
    if (w.failed) return;
    Ctl ctl(w, i);
    if (ctl.r.phase == Phase::Done) return;
    ctl.run();
}

}  // namespace swl
