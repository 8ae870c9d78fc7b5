#pragma once

// Deterministic discrete-event asynchronous network. Logical time is the
// event counter; message delays are arbitrary finite reorderings chosen by
// a seeded policy. Crash and repair events are injected from the fault
// schedule. Under condition n1/n2 the scheduler opens a stability window
// per group-send: it picks ceil(alpha*n) active servers and defers any
// crash request against them until the window closes (n1: all protected
// servers consumed their message; n2: additionally the sender consumed all
// of their responses, during which responses from unprotected servers are
// held back so the sender's recorded quorums stay inside the protected
// set). Delivery to a crashed process records a drop; one handler
// invocation is atomic, which is exactly effective consumption.

#include <deque>
#include <memory>
#include <queue>
#include <random>

#include "radon_c.hpp"
#include "radon_s.hpp"
#include "scenario.hpp"
#include "trace.hpp"

namespace radon {

struct RadonLProto {
    static constexpr Proto id = Proto::radon_l;
    using Params = RadonLParams;
    using Server = RadonLServer;
    using Client = RadonLClient;
    static Params make_params(const ScenarioConfig& c) { return RadonLParams::make(c.n, c.value_size); }
};

struct RadonCProto {
    static constexpr Proto id = Proto::radon_c;
    using Params = RadonCParams;
    using Server = RadonCServer;
    using Client = RadonCClient;
    static Params make_params(const ScenarioConfig& c) {
        return RadonCParams::make(c.n, c.k, c.delta, c.value_size);
    }
};

struct RadonSProto {
    static constexpr Proto id = Proto::radon_s;
    using Params = RadonSParams;
    using Server = RadonSServer;
    using Client = RadonSClient;
    static Params make_params(const ScenarioConfig& c) { return RadonSParams::make(c.n, c.value_size); }
};

struct WindowInfo {
    std::uint64_t id{0};
    bool n2{false};
    std::uint64_t open_time{0};
    std::uint64_t close_time{0};
    std::vector<std::uint32_t> protected_servers;
};

struct RunOutcome {
    bool budget_exhausted{false};
    std::uint64_t events{0};
    std::uint64_t deferrals{0};
    std::uint64_t skipped_crashes{0};
    std::uint32_t condition_violations{0};
    std::uint32_t stuck_reads{0};
    std::uint32_t crash_count{0};
    std::uint32_t repairs_started{0};
    std::uint32_t repairs_completed{0};
    bool quiescent{false};
    std::vector<WindowInfo> windows;
};

template <class P>
class World {
  public:
    explicit World(const ScenarioConfig& cfg)
        : cfg_(validated(cfg)), params_(P::make_params(cfg_)), rng_(cfg_.seed) {
        alpha_count_ = cfg_.alpha_count();
        servers_.reserve(cfg_.n);
        for (std::uint32_t i = 1; i <= cfg_.n; ++i)
            servers_.push_back(ServerSlot{std::make_unique<typename P::Server>(i, &params_), false});
        for (std::uint32_t i = 1; i <= cfg_.writers; ++i)
            clients_.push_back(ClientSlot{std::make_unique<typename P::Client>(writer_id(i), &params_),
                                          writer_id(i), OpKind::write});
        for (std::uint32_t i = 1; i <= cfg_.readers; ++i)
            clients_.push_back(ClientSlot{std::make_unique<typename P::Client>(reader_id(i), &params_),
                                          reader_id(i), OpKind::read});
        plan_.enabled = cfg_.fault.kind == FaultGenKind::theorem1;
        plan_.armed = plan_.enabled;
    }

    World(const World&) = delete;
    World& operator=(const World&) = delete;

    RunOutcome run() {
        for (std::uint32_t i = 1; i <= cfg_.n; ++i) log_snapshot(i, "init");
        std::uint32_t order = 0;
        for (auto& cl : clients_) enqueue_invoke(cl.pid, 1 + order++ + jitter());
        schedule_fault_entries();

        while (true) {
            if (queue_.empty()) {
                // reliable links: if the adversary plan still holds messages
                // it can no longer act on (a stalled repair), let them through
                if (plan_.next < plan_.held.size()) {
                    plan_.waiting_repair.reset();
                    while (plan_.next < plan_.held.size()) enqueue_delivery(plan_.held[plan_.next++]);
                    continue;
                }
                break;
            }
            if (outcome_.events >= cfg_.step_budget) {
                outcome_.budget_exhausted = true;
                break;
            }
            QueueEntry e = queue_.top();
            queue_.pop();
            ++outcome_.events;
            now_ = outcome_.events;
            switch (e.kind) {
                case QueueEntry::Kind::deliver: process_delivery(e.msg); break;
                case QueueEntry::Kind::invoke: process_invoke(e.target); break;
                case QueueEntry::Kind::crash: attempt_crash(e.target, e.chain_repair); break;
                case QueueEntry::Kind::repair: process_repair_trigger(e.target); break;
                case QueueEntry::Kind::arm_mid_gsend: armed_mid_[e.target] = e.prefix; break;
            }
            maybe_inject_fault();
        }
        outcome_.quiescent = queue_.empty();
        for (const auto& w : windows_) outcome_.windows.push_back(w.info);
        return outcome_;
    }

    const Trace& trace() const { return trace_; }
    Trace take_trace() { return std::move(trace_); }
    const typename P::Params& params() const { return params_; }
    const typename P::Server& server(std::uint32_t index) const { return *servers_[index - 1].s; }
    bool server_crashed(std::uint32_t index) const { return servers_[index - 1].crashed; }

  private:
    struct QueueEntry {
        std::uint64_t when{0};
        std::uint64_t seq{0};
        enum class Kind : std::uint8_t { deliver, invoke, crash, repair, arm_mid_gsend } kind{Kind::deliver};
        std::shared_ptr<const Message> msg;
        ProcessId target{};
        bool chain_repair{false};
        std::uint32_t prefix{0};
    };

    struct QueueCmp {
        bool operator()(const QueueEntry& a, const QueueEntry& b) const {
            if (a.when != b.when) return a.when > b.when;
            return a.seq > b.seq;
        }
    };

    struct ServerSlot {
        std::unique_ptr<typename P::Server> s;
        bool crashed{false};
    };

    struct ClientSlot {
        std::unique_ptr<typename P::Client> c;
        ProcessId pid{};
        OpKind role{OpKind::write};
        bool crashed{false};
        bool stuck{false};
        std::uint32_t ops_done{0};
    };

    struct Window {
        std::uint64_t id{0};
        bool n2{false};
        bool open{true};
        ProcessId sender{};
        std::uint64_t op_id{0};
        std::uint32_t phase{0};
        std::set<std::uint32_t> members;
        std::set<std::uint64_t> awaiting_consume;    // message ids to protected servers
        bool all_responded{true};
        bool response_stage{false};
        std::set<std::uint64_t> awaiting_responses;  // protected responses the sender must consume
        std::vector<std::pair<ProcessId, bool>> parked_crashes;
        std::vector<std::shared_ptr<const Message>> held;
        WindowInfo info;
    };

    enum class CrashOutcome : std::uint8_t { executed, deferred, skipped, ignored };

    static ScenarioConfig validated(ScenarioConfig c) {
        c.validate();
        return c;
    }

    // ---- scheduling helpers ----

    std::uint64_t jitter() {
        switch (cfg_.delivery) {
            case DeliveryPolicy::fifo: return 0;
            case DeliveryPolicy::random_delay: return rng_() % 48;
            case DeliveryPolicy::max_reorder: return rng_() % 512;
        }
        return 0;
    }

    void enqueue(QueueEntry e, std::uint64_t when) {
        e.when = when;
        e.seq = ++seq_;
        queue_.push(std::move(e));
    }

    void enqueue_delivery(std::shared_ptr<const Message> m) {
        QueueEntry e;
        e.kind = QueueEntry::Kind::deliver;
        e.msg = std::move(m);
        enqueue(std::move(e), now_ + 1 + jitter());
    }

    void enqueue_invoke(ProcessId client, std::uint64_t when) {
        QueueEntry e;
        e.kind = QueueEntry::Kind::invoke;
        e.target = client;
        enqueue(std::move(e), when);
    }

    void schedule_fault_entries() {
        if (cfg_.fault.kind == FaultGenKind::burst) {
            const std::uint32_t down = cfg_.n >= 3 ? (cfg_.n - 1) / 2 : 0;
            for (std::uint32_t i = 1; i <= down; ++i) {
                QueueEntry c;
                c.kind = QueueEntry::Kind::crash;
                c.target = server_id(i);
                enqueue(std::move(c), 60 + i);
                QueueEntry r;
                r.kind = QueueEntry::Kind::repair;
                r.target = server_id(i);
                enqueue(std::move(r), 200 + 3 * i);
            }
            return;
        }
        for (const auto& fe : cfg_.fault.entries) {
            QueueEntry e;
            e.target = fe.target;
            switch (fe.kind) {
                case FaultEntry::Kind::crash: e.kind = QueueEntry::Kind::crash; break;
                case FaultEntry::Kind::repair: e.kind = QueueEntry::Kind::repair; break;
                case FaultEntry::Kind::crash_mid_group_send:
                    e.kind = QueueEntry::Kind::arm_mid_gsend;
                    e.prefix = fe.prefix;
                    break;
            }
            enqueue(std::move(e), fe.at);
        }
    }

    bool clients_have_work() const {
        for (const auto& cl : clients_)
            if (!cl.crashed && !cl.stuck && (cl.c->busy() || cl.ops_done < cfg_.ops_per_client)) return true;
        return false;
    }

    void maybe_inject_fault() {
        if (cfg_.fault.kind != FaultGenKind::random_faults || cfg_.fault.rate <= 0.0) return;
        if (!clients_have_work()) return;
        const std::uint32_t cap = cfg_.fault.max_crashes ? cfg_.fault.max_crashes : 30 + 10 * cfg_.n;
        if (injected_ >= cap) return;
        const double draw = static_cast<double>(rng_() >> 11) * (1.0 / 9007199254740992.0);
        if (draw >= cfg_.fault.rate) return;
        // bias half the strikes at the server that just consumed a message:
        // a crash right after receipt is the sharpest loss-on-crash adversary
        std::uint32_t idx = 1 + static_cast<std::uint32_t>(rng_() % cfg_.n);
        if (last_consumer_ != 0 && rng_() % 2 == 0) idx = last_consumer_;
        if (servers_[idx - 1].crashed) return;  // a repair chained at crash time will handle it
        ++injected_;
        attempt_crash(server_id(idx), true);
    }

    // ---- trace helpers ----

    void log_snapshot(std::uint32_t index, const char* label) {
        const auto& slot = servers_[index - 1];
        TraceRecord r;
        r.event = EventKind::snapshot;
        r.actor = server_id(index);
        r.payload_kind = label;
        SnapshotInfo si;
        if (slot.crashed) {
            si.status = ServerStatus::crashed;
        } else {
            si.status = slot.s->status();
            si.stored_bytes = slot.s->stored_bytes();
            si.tags = slot.s->held_tags();
            si.entries = slot.s->snapshot_entries();
        }
        if (!si.tags.empty()) r.tag = max_tag(si.tags);
        r.size_bytes = si.stored_bytes;
        r.snap = std::move(si);
        trace_.append(std::move(r));
    }

    std::shared_ptr<const Message> log_send(Message&& m) {
        m.id = ids_.next();
        auto sp = std::make_shared<const Message>(std::move(m));
        TraceRecord r;
        r.event = EventKind::send;
        r.actor = sp->sender;
        r.op_id = sp->op_id;
        r.payload_kind = payload_name(sp->kind);
        r.tag = payload_tag(*sp);
        r.size_bytes = value_bytes(*sp);
        r.msg = sp;
        trace_.append(std::move(r));
        return sp;
    }

    void log_msg_event(EventKind ev, const std::shared_ptr<const Message>& m) {
        TraceRecord r;
        r.event = ev;
        r.actor = m->recipient;
        r.op_id = m->op_id;
        r.payload_kind = payload_name(m->kind);
        r.tag = payload_tag(*m);
        r.size_bytes = value_bytes(*m);
        r.msg = m;
        trace_.append(std::move(r));
    }

    // ---- stability windows ----

    Window* find_open_window_for_response(const Message& r) {
        for (auto& w : windows_)
            if (w.open && w.n2 && w.sender == r.recipient && w.op_id == r.op_id && w.phase == r.phase)
                return &w;
        return nullptr;
    }

    std::uint32_t active_server_count() const {
        std::uint32_t c = 0;
        for (const auto& s : servers_)
            if (!s.crashed && s.s->status() == ServerStatus::active) ++c;
        return c;
    }

    void open_window(ProcessId sender, std::uint64_t op, std::uint32_t phase,
                     const std::vector<std::shared_ptr<const Message>>& msgs) {
        std::vector<std::uint32_t> active;
        for (std::uint32_t i = 1; i <= cfg_.n; ++i)
            if (!servers_[i - 1].crashed && servers_[i - 1].s->status() == ServerStatus::active)
                active.push_back(i);
        if (active.size() < alpha_count_) {
            ++outcome_.condition_violations;
            TraceRecord r;
            r.event = EventKind::snapshot;
            r.actor = sender;
            r.op_id = op;
            r.payload_kind = "condition-violation";
            trace_.append(std::move(r));
            return;
        }
        Window w;
        w.id = ++window_ids_;
        w.n2 = cfg_.condition == Condition::n2;
        w.sender = sender;
        w.op_id = op;
        w.phase = phase;
        for (std::uint32_t i = 0; i < alpha_count_; ++i) w.members.insert(active[i]);
        for (const auto& m : msgs)
            if (w.members.count(m->recipient.index)) w.awaiting_consume.insert(m->id);
        w.info.id = w.id;
        w.info.n2 = w.n2;
        w.info.protected_servers.assign(w.members.begin(), w.members.end());

        TraceRecord r;
        r.event = EventKind::snapshot;
        r.payload_kind = "window-open";
        r.op_id = op;
        WindowNote note;
        note.window_id = w.id;
        note.open = true;
        note.n2 = w.n2;
        note.protected_servers = w.info.protected_servers;
        r.window = std::move(note);
        w.info.open_time = trace_.append(std::move(r)).time;
        windows_.push_back(std::move(w));
    }

    void close_window(Window& w) {
        if (!w.open) return;
        w.open = false;
        TraceRecord r;
        r.event = EventKind::snapshot;
        r.payload_kind = "window-close";
        r.op_id = w.op_id;
        WindowNote note;
        note.window_id = w.id;
        note.open = false;
        note.n2 = w.n2;
        note.protected_servers = w.info.protected_servers;
        r.window = std::move(note);
        w.info.close_time = trace_.append(std::move(r)).time;

        auto parked = std::move(w.parked_crashes);
        w.parked_crashes.clear();
        auto held = std::move(w.held);
        w.held.clear();
        for (const auto& [target, chain] : parked) attempt_crash(target, chain);
        for (auto& m : held) enqueue_delivery(std::move(m));
    }

    void close_windows_by_sender(ProcessId sender) {
        for (auto& w : windows_)
            if (w.open && w.sender == sender) close_window(w);
    }

    // ---- faults ----

    CrashOutcome attempt_crash(ProcessId target, bool chain_repair) {
        if (target.kind != ProcessKind::server) {
            for (auto& cl : clients_) {
                if (cl.pid != target || cl.crashed) continue;
                cl.crashed = true;
                TraceRecord r;
                r.event = EventKind::crash;
                r.actor = target;
                trace_.append(std::move(r));
                close_windows_by_sender(target);
                return CrashOutcome::executed;
            }
            return CrashOutcome::ignored;
        }
        auto& slot = servers_[target.index - 1];
        if (slot.crashed) return CrashOutcome::ignored;
        for (auto& w : windows_) {
            if (w.open && w.members.count(target.index)) {
                w.parked_crashes.emplace_back(target, chain_repair);
                ++outcome_.deferrals;
                return CrashOutcome::deferred;
            }
        }
        if (cfg_.condition != Condition::none && slot.s->status() == ServerStatus::active &&
            active_server_count() - 1 < alpha_count_) {
            ++outcome_.skipped_crashes;
            return CrashOutcome::skipped;
        }
        slot.crashed = true;
        slot.s->on_crash();
        ++outcome_.crash_count;
        TraceRecord r;
        r.event = EventKind::crash;
        r.actor = target;
        trace_.append(std::move(r));
        log_snapshot(target.index, "crashed");
        close_windows_by_sender(target);
        if (chain_repair) {
            QueueEntry e;
            e.kind = QueueEntry::Kind::repair;
            e.target = target;
            enqueue(std::move(e), now_ + 2 + (cfg_.delivery == DeliveryPolicy::fifo ? 10 : rng_() % 40));
        }
        return CrashOutcome::executed;
    }

    void process_repair_trigger(ProcessId target) {
        if (target.kind != ProcessKind::server) return;
        auto& slot = servers_[target.index - 1];
        if (!slot.crashed) return;  // repair triggers are only meaningful on crashed servers
        slot.crashed = false;
        Outbox out;
        slot.s->on_repair_trigger(ids_, out);
        ++outcome_.repairs_started;
        TraceRecord r;
        r.event = EventKind::repair_start;
        r.actor = target;
        r.op_id = slot.s->repair_op();
        r.op = OpKind::repair;
        r.payload_kind = "repair";
        trace_.append(std::move(r));
        log_snapshot(target.index, "repair-entered");
        process_server_outbox(target.index, out);
    }

    // ---- group sends ----

    void process_group_send(ProcessId sender, std::vector<Message>&& msgs) {
        std::uint32_t limit = static_cast<std::uint32_t>(msgs.size());
        bool crash_sender = false;
        if (auto it = armed_mid_.find(sender); it != armed_mid_.end()) {
            limit = std::min(limit, it->second);
            crash_sender = true;
            armed_mid_.erase(it);
        }
        std::vector<std::shared_ptr<const Message>> sent;
        sent.reserve(limit);
        const std::uint64_t op = msgs.empty() ? 0 : msgs.front().op_id;
        const std::uint32_t phase = msgs.empty() ? 0 : msgs.front().phase;
        for (std::uint32_t i = 0; i < limit; ++i) sent.push_back(log_send(std::move(msgs[i])));
        // a sender that fails mid group-send earns no stability window
        if (!crash_sender && cfg_.condition != Condition::none) open_window(sender, op, phase, sent);
        if (plan_.enabled && plan_.armed && sender.kind != ProcessKind::server) {
            plan_.armed = false;
            plan_.held = sent;
            plan_advance();
        } else {
            for (auto& m : sent) enqueue_delivery(std::move(m));
        }
        if (crash_sender) attempt_crash(sender, false);
    }

    // The one-at-a-time adversary: for each message of the intercepted
    // group-send, crash the recipient, let the message hit the crashed
    // server (a drop), repair it, then move to the next. A deferred or
    // skipped crash releases the message instead, so with condition
    // enforcement the same request list turns harmless.
    void plan_advance() {
        while (plan_.next < plan_.held.size()) {
            auto m = plan_.held[plan_.next];
            const ProcessId target = m->recipient;
            const CrashOutcome oc = attempt_crash(target, true);
            if (oc == CrashOutcome::executed) {
                enqueue_delivery(m);
                QueueEntry e;
                e.kind = QueueEntry::Kind::repair;
                e.target = target;
                enqueue(std::move(e), now_ + 2);
                plan_.waiting_repair = target.index;
                ++plan_.next;
                return;
            }
            enqueue_delivery(m);
            ++plan_.next;
        }
    }

    void plan_on_repair_end(std::uint32_t index) {
        if (!plan_.enabled || !plan_.waiting_repair || *plan_.waiting_repair != index) return;
        plan_.waiting_repair.reset();
        plan_advance();
    }

    // ---- deliveries ----

    void process_delivery(const std::shared_ptr<const Message>& m) {
        if (m->recipient.kind == ProcessKind::server) {
            deliver_to_server(m);
        } else {
            deliver_to_client(m);
        }
        // n2 bookkeeping: the sender consumed (or lost) a protected response
        for (auto& w : windows_) {
            if (!w.open) continue;
            if (w.awaiting_responses.erase(m->id)) {
                if (w.response_stage && w.awaiting_responses.empty()) close_window(w);
                break;
            }
        }
    }

    void deliver_to_server(const std::shared_ptr<const Message>& m) {
        auto& slot = servers_[m->recipient.index - 1];
        if (slot.crashed) {
            log_msg_event(EventKind::drop, m);
            return;
        }
        last_consumer_ = m->recipient.index;
        log_msg_event(EventKind::deliver, m);
        Outbox out;
        slot.s->handle(*m, ids_, out);
        Window* w = nullptr;
        for (auto& cand : windows_)
            if (cand.open && cand.awaiting_consume.count(m->id)) {
                w = &cand;
                break;
            }
        bool responded_to_window_sender = false;
        if (w)
            for (const auto& s : out.sends)
                if (s.recipient == w->sender && s.op_id == w->op_id && s.phase == w->phase)
                    responded_to_window_sender = true;
        process_server_outbox(m->recipient.index, out);
        if (w && w->open) {
            w->awaiting_consume.erase(m->id);
            if (!responded_to_window_sender) w->all_responded = false;
            if (w->awaiting_consume.empty()) {
                if (!w->n2 || !w->all_responded || w->awaiting_responses.empty())
                    close_window(*w);
                else
                    w->response_stage = true;
            }
        }
    }

    void process_server_outbox(std::uint32_t index, Outbox& out) {
        auto& slot = servers_[index - 1];
        for (auto& reply : out.sends) {
            Message msg = std::move(reply);
            Window* w2 = find_open_window_for_response(msg);
            if (w2 && !w2->members.count(index)) {
                // unprotected response during an open n2 window: hold until close
                w2->held.push_back(log_send(std::move(msg)));
                continue;
            }
            auto sp = log_send(std::move(msg));
            if (w2) w2->awaiting_responses.insert(sp->id);
            enqueue_delivery(std::move(sp));
        }
        for (auto& gs : out.group_sends) process_group_send(server_id(index), std::move(gs));
        if (out.completed) {
            ++outcome_.repairs_completed;
            log_snapshot(index, "repaired");
            TraceRecord r;
            r.event = EventKind::repair_end;
            r.actor = server_id(index);
            r.op_id = slot.s->repair_op();
            r.op = OpKind::repair;
            r.payload_kind = "repair";
            auto tags = slot.s->held_tags();
            if (!tags.empty()) r.tag = max_tag(tags);
            r.size_bytes = slot.s->stored_bytes();
            r.snap = SnapshotInfo{slot.s->status(), slot.s->stored_bytes(), tags, slot.s->snapshot_entries()};
            trace_.append(std::move(r));
            plan_on_repair_end(index);
        } else if (out.state_changed) {
            log_snapshot(index, "state");
        }
    }

    ClientSlot* find_client(ProcessId pid) {
        for (auto& cl : clients_)
            if (cl.pid == pid) return &cl;
        return nullptr;
    }

    void deliver_to_client(const std::shared_ptr<const Message>& m) {
        ClientSlot* cl = find_client(m->recipient);
        if (!cl || cl->crashed) {
            log_msg_event(EventKind::drop, m);
            return;
        }
        log_msg_event(EventKind::deliver, m);
        Outbox out;
        cl->c->on_message(*m, ids_, out);
        process_client_outbox(*cl, out);
    }

    void process_client_outbox(ClientSlot& cl, Outbox& out) {
        for (auto& gs : out.group_sends) process_group_send(cl.pid, std::move(gs));
        if (out.stuck) {
            cl.stuck = true;
            ++outcome_.stuck_reads;
            TraceRecord r;
            r.event = EventKind::snapshot;
            r.actor = cl.pid;
            r.op_id = cl.c->op_id();
            r.payload_kind = "stuck-read";
            trace_.append(std::move(r));
        }
        if (out.completed) {
            TraceRecord r;
            r.event = EventKind::respond;
            r.actor = cl.pid;
            r.op_id = cl.c->op_id();
            r.op = cl.role;
            r.payload_kind = op_name(cl.role);
            r.tag = cl.c->op_tag();
            if (cl.role == OpKind::read && cl.c->read_result())
                r.value = std::make_shared<const Value>(*cl.c->read_result());
            r.ack_set = cl.c->ack_set();
            r.confirm_set = cl.c->confirm_set();
            trace_.append(std::move(r));
            ++cl.ops_done;
            if (cl.ops_done < cfg_.ops_per_client) enqueue_invoke(cl.pid, now_ + 1 + jitter());
        }
    }

    void process_invoke(ProcessId pid) {
        ClientSlot* cl = find_client(pid);
        if (!cl || cl->crashed || cl->stuck || cl->c->busy() || cl->ops_done >= cfg_.ops_per_client) return;
        Outbox out;
        std::shared_ptr<const Value> written;
        if (cl->role == OpKind::write) {
            Value v = workload_value(pid.index, cl->ops_done + 1, cfg_.value_size);
            written = std::make_shared<const Value>(v);
            cl->c->invoke_write(v, ids_, out);
        } else {
            cl->c->invoke_read(ids_, out);
        }
        TraceRecord r;
        r.event = EventKind::invoke;
        r.actor = pid;
        r.op_id = cl->c->op_id();
        r.op = cl->role;
        r.payload_kind = op_name(cl->role);
        r.value = written;
        trace_.append(std::move(r));
        process_client_outbox(*cl, out);
    }

    struct T1Plan {
        bool enabled{false};
        bool armed{false};
        std::vector<std::shared_ptr<const Message>> held;
        std::size_t next{0};
        std::optional<std::uint32_t> waiting_repair;
    };

    ScenarioConfig cfg_;
    typename P::Params params_;
    std::mt19937_64 rng_;
    std::uint32_t alpha_count_{0};
    IdGen ids_;
    Trace trace_;
    RunOutcome outcome_;
    std::vector<ServerSlot> servers_;
    std::vector<ClientSlot> clients_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueCmp> queue_;
    std::deque<Window> windows_;  // deque: window references stay valid as new windows open
    std::map<ProcessId, std::uint32_t> armed_mid_;
    T1Plan plan_;
    std::uint64_t seq_{0};
    std::uint64_t now_{0};
    std::uint64_t window_ids_{0};
    std::uint32_t injected_{0};
    std::uint32_t last_consumer_{0};
};

// Runs one scenario with the protocol picked at runtime.
struct RunResult {
    RunOutcome outcome;
    Trace trace;
};

inline RunResult run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.protocol) {
        case Proto::radon_l: {
            World<RadonLProto> w(cfg);
            RunResult r;
            r.outcome = w.run();
            r.trace = w.take_trace();
            return r;
        }
        case Proto::radon_c: {
            World<RadonCProto> w(cfg);
            RunResult r;
            r.outcome = w.run();
            r.trace = w.take_trace();
            return r;
        }
        case Proto::radon_s: {
            World<RadonSProto> w(cfg);
            RunResult r;
            r.outcome = w.run();
            r.trace = w.take_trace();
            return r;
        }
    }
    throw std::logic_error("run_scenario: bad protocol");
}

}  // namespace radon
