#pragma once

// Post-hoc trace analysis. Tags make the linearization explicit, so the
// atomicity verdict reduces to three checks over completed operations:
// P1 the tag order never contradicts real-time precedence, P2 write tags
// are pairwise distinct, P3 every read returns the value written for its
// tag (or the initial value at t0). Liveness, concurrency measurement
// (delta), the protocol lemma invariants and Table-style cost accounting all
// run over the same records.

#include <algorithm>
#include <map>
#include <set>

#include "codec.hpp"
#include "netsim.hpp"

namespace radon {

struct OpSummary {
    std::uint64_t op_id{0};
    OpKind kind{OpKind::write};
    ProcessId actor{};
    std::uint64_t invoke_t{0};
    std::uint64_t respond_t{0};  // 0 while incomplete
    bool completed{false};
    std::optional<Tag> tag;
    std::shared_ptr<const Value> value;  // writes: written value; reads: returned value
    std::shared_ptr<const std::vector<ListEntry>> repaired_entries;
    std::shared_ptr<const std::vector<ProcessId>> ack_set;
    std::shared_ptr<const std::vector<ProcessId>> confirm_set;
};

struct AtomicityVerdict {
    bool atomic{true};
    std::string property;  // "P1" / "P2" / "P3" when violated
    std::uint64_t op_a{0};
    std::uint64_t op_b{0};
    std::string detail;
};

struct LivenessVerdict {
    bool live{true};
    bool inconclusive{false};  // budget ran out before quiescence
    std::vector<std::uint64_t> starved_ops;
    std::vector<std::uint32_t> stalled_repairs;  // server indices
    std::string detail;
};

struct CheckResult {
    std::string name;
    enum class Status : std::uint8_t { passed, failed, skipped } status{Status::passed};
    std::uint64_t checked{0};
    std::string detail;
};

struct LemmaReport {
    std::vector<CheckResult> checks;
    bool precondition_holds{true};  // majority-active-at-or-above-tag point per completed op
    std::uint64_t precondition_counterexample_op{0};

    bool all_ok() const {
        for (const auto& c : checks)
            if (c.status == CheckResult::Status::failed) return false;
        return true;
    }
};

struct CostReport {
    double write_cost{0};       // max units over writes that reached the put phase
    double read_cost{0};        // max units over completed reads
    double storage_max{0};      // max total stored units over time
    double write_formula{0};    // n or n/k
    double read_formula{0};     // 2n or (delta+2)n/k
    double storage_formula{0};  // n or (delta+1)n/k
    bool write_exact{true};     // every put-phase write hit the formula exactly
    bool read_within{true};
    bool storage_within{true};
    std::uint64_t writes_measured{0};
    std::uint64_t reads_measured{0};

    bool ok() const { return write_exact && read_within && storage_within; }
};

class TraceAnalysis {
  public:
    TraceAnalysis(const Trace& trace, const ScenarioConfig& cfg, const RunOutcome& outcome)
        : trace_(trace), cfg_(cfg), outcome_(outcome) {
        quorums_l_ = quorum_sizes_l(cfg.n);
        quorums_c_ = quorum_sizes_c(cfg.n, cfg.protocol == Proto::radon_c ? cfg.k : 1);
        extract();
    }

    const std::vector<OpSummary>& ops() const { return ops_; }

    // ---- atomicity (P1-P3 over completed reads/writes) ----

    AtomicityVerdict check_atomicity() const {
        AtomicityVerdict v;
        std::vector<const OpSummary*> completed;
        std::vector<const OpSummary*> writes_with_tags;  // completed plus tag-known incomplete
        for (const auto& op : ops_) {
            if (op.kind == OpKind::repair) continue;
            if (op.completed) {
                if (!op.tag) throw std::invalid_argument("atomicity: completed op without tag");
                completed.push_back(&op);
            }
            if (op.kind == OpKind::write && op.tag) writes_with_tags.push_back(&op);
        }

        // P2: no two distinct writes share a tag
        std::map<Tag, const OpSummary*> write_tags;
        for (const auto* w : writes_with_tags) {
            auto [it, fresh] = write_tags.emplace(*w->tag, w);
            if (!fresh) {
                v.atomic = false;
                v.property = "P2";
                v.op_a = it->second->op_id;
                v.op_b = w->op_id;
                v.detail = "two writes share tag " + to_string(*w->tag);
                return v;
            }
        }

        // P1: precedence in real time never contradicts the tag order
        for (const auto* a : completed) {
            for (const auto* b : completed) {
                if (a == b || a->respond_t >= b->invoke_t) continue;  // need: a completes before b starts
                const bool b_before_a =
                    *b->tag < *a->tag ||
                    (*b->tag == *a->tag && b->kind == OpKind::write && a->kind == OpKind::read);
                if (b_before_a) {
                    v.atomic = false;
                    v.property = "P1";
                    v.op_a = a->op_id;
                    v.op_b = b->op_id;
                    v.detail = "op " + std::to_string(b->op_id) + " (tag " + to_string(*b->tag) +
                               ") ordered before op " + std::to_string(a->op_id) + " (tag " +
                               to_string(*a->tag) + ") that completed earlier";
                    return v;
                }
            }
        }

        // P3: reads return the value of the write owning their tag
        const Value v0 = zero_value(cfg_.value_size);
        for (const auto* r : completed) {
            if (r->kind != OpKind::read) continue;
            if (*r->tag == Tag{}) {
                if (r->value && !(*r->value == v0)) {
                    v.atomic = false;
                    v.property = "P3";
                    v.op_a = r->op_id;
                    v.detail = "read at t0 returned a non-initial value";
                    return v;
                }
                continue;
            }
            auto it = write_tags.find(*r->tag);
            if (it == write_tags.end()) {
                v.atomic = false;
                v.property = "P3";
                v.op_a = r->op_id;
                v.detail = "read returned tag " + to_string(*r->tag) + " that no write produced";
                return v;
            }
            if (r->value && it->second->value && !(*r->value == *it->second->value)) {
                v.atomic = false;
                v.property = "P3";
                v.op_a = r->op_id;
                v.op_b = it->second->op_id;
                v.detail = "read value differs from the write bound to tag " + to_string(*r->tag);
                return v;
            }
        }
        return v;
    }

    // ---- liveness ----

    LivenessVerdict check_liveness() const {
        LivenessVerdict v;
        if (outcome_.budget_exhausted) {
            v.inconclusive = true;
            v.detail = "step budget exhausted before quiescence";
            return v;
        }
        for (const auto& op : ops_) {
            if (op.kind == OpKind::repair) {
                if (op.completed) continue;
                // excused only by a further crash of the same server
                if (!crashed_after(op.actor, op.invoke_t)) {
                    v.live = false;
                    v.stalled_repairs.push_back(op.actor.index);
                }
                continue;
            }
            if (op.completed) continue;
            if (client_crash_time(op.actor) != 0) continue;  // faulty client, excluded
            v.live = false;
            v.starved_ops.push_back(op.op_id);
        }
        if (!v.live) v.detail = "operations or repairs failed to complete at quiescence";
        return v;
    }

    // ---- delta (writes concurrent with a valid read or repair) ----

    std::uint32_t measure_delta() const {
        std::uint32_t worst = 0;
        for (const auto& op : ops_) {
            std::uint64_t t2 = 0;
            if (op.kind == OpKind::read) {
                t2 = read_quorum_time(op);
                if (t2 == 0) continue;  // not a valid read
            } else if (op.kind == OpKind::repair) {
                if (!op.completed) continue;
                t2 = op.respond_t;
            } else {
                continue;
            }
            const Tag sigma = max_completed_write_tag_before(op.invoke_t);
            std::uint32_t overlap = 0;
            for (const auto& w : ops_) {
                if (w.kind != OpKind::write || !w.tag) continue;
                if (w.invoke_t < t2 && sigma < *w.tag) ++overlap;
            }
            worst = std::max(worst, overlap);
        }
        return worst;
    }

    // ---- lemma invariants ----

    LemmaReport check_lemma_invariants() const {
        LemmaReport rep;
        check_tag_monotonicity(rep);
        if (cfg_.protocol == Proto::radon_c) {
            check_list_bound(rep);
            check_lemma2(rep);
        } else {
            check_lemma1(rep);
            check_precondition(rep);
            if (cfg_.protocol == Proto::radon_s) check_seen_hygiene(rep);
        }
        return rep;
    }

    // ---- costs ----

    CostReport measure_costs() const {
        CostReport c;
        const double L = static_cast<double>(cfg_.value_size);
        const double n = cfg_.n;
        const double k = cfg_.protocol == Proto::radon_c ? cfg_.k : 1.0;
        const double d = cfg_.protocol == Proto::radon_c ? cfg_.delta : 0.0;
        if (cfg_.protocol == Proto::radon_c) {
            c.write_formula = n / k;
            c.read_formula = (d + 2.0) * n / k;
            c.storage_formula = (d + 1.0) * n / k;
        } else {
            c.write_formula = n;
            c.read_formula = 2.0 * n;
            c.storage_formula = n;
        }

        std::map<std::uint64_t, std::size_t> bytes_by_op;
        for (const auto& r : trace_.records())
            if (r.event == EventKind::send && r.msg) bytes_by_op[r.msg->op_id] += value_bytes(*r.msg);

        for (const auto& op : ops_) {
            if (op.kind == OpKind::repair) continue;
            const auto it = bytes_by_op.find(op.op_id);
            const double units = it == bytes_by_op.end() ? 0.0 : static_cast<double>(it->second) / L;
            if (op.kind == OpKind::write) {
                if (!op.tag) continue;  // never reached the put phase, no dispersal happened
                ++c.writes_measured;
                c.write_cost = std::max(c.write_cost, units);
                if (std::abs(units - c.write_formula) > 1e-9) c.write_exact = false;
            } else if (op.completed) {
                ++c.reads_measured;
                c.read_cost = std::max(c.read_cost, units);
                if (units > c.read_formula + 1e-9) c.read_within = false;
            }
        }

        // storage: walk the snapshots, track each server's latest stored bytes
        std::vector<std::size_t> stored(cfg_.n, 0);
        std::size_t total = 0, peak = 0;
        for (const auto& r : trace_.records()) {
            if ((r.event != EventKind::snapshot && r.event != EventKind::repair_end) || !r.snap) continue;
            if (!r.actor || r.actor->kind != ProcessKind::server) continue;
            const std::uint32_t idx = r.actor->index - 1;
            total -= stored[idx];
            stored[idx] = r.snap->stored_bytes;
            total += stored[idx];
            peak = std::max(peak, total);
        }
        c.storage_max = static_cast<double>(peak) / L;
        if (c.storage_max > c.storage_formula + 1e-9) c.storage_within = false;
        return c;
    }

    // At-most-one-crashed hypothesis of the impossibility construction.
    bool at_most_one_down() const {
        std::vector<ServerStatus> st(cfg_.n, ServerStatus::active);
        std::uint32_t down = 0;
        for (const auto& r : trace_.records()) {
            if (!r.actor || r.actor->kind != ProcessKind::server) continue;
            const std::uint32_t i = r.actor->index - 1;
            ServerStatus next = st[i];
            if (r.event == EventKind::crash) next = ServerStatus::crashed;
            else if (r.event == EventKind::repair_start) next = ServerStatus::repair;
            else if (r.event == EventKind::repair_end) next = ServerStatus::active;
            else continue;
            down -= st[i] != ServerStatus::active ? 1 : 0;
            st[i] = next;
            down += st[i] != ServerStatus::active ? 1 : 0;
            if (down > 1) return false;
        }
        return true;
    }

    // No protected server crashed inside its open window.
    bool windows_honored() const {
        for (const auto& w : outcome_.windows) {
            const std::uint64_t close = w.close_time == 0 ? UINT64_MAX : w.close_time;
            for (const auto& r : trace_.records()) {
                if (r.event != EventKind::crash || !r.actor || r.actor->kind != ProcessKind::server) continue;
                if (r.time <= w.open_time || r.time >= close) continue;
                for (std::uint32_t s : w.protected_servers)
                    if (s == r.actor->index) return false;
            }
        }
        return true;
    }

  private:
    // ---- extraction ----

    void extract() {
        std::map<std::uint64_t, std::size_t> index;
        for (const auto& r : trace_.records()) {
            switch (r.event) {
                case EventKind::invoke: {
                    OpSummary op;
                    op.op_id = r.op_id;
                    op.kind = r.op.value_or(OpKind::write);
                    op.actor = *r.actor;
                    op.invoke_t = r.time;
                    op.value = r.value;
                    index[r.op_id] = ops_.size();
                    ops_.push_back(std::move(op));
                    break;
                }
                case EventKind::respond: {
                    auto it = index.find(r.op_id);
                    if (it == index.end()) throw std::invalid_argument("trace: respond without invoke");
                    OpSummary& op = ops_[it->second];
                    op.completed = true;
                    op.respond_t = r.time;
                    op.tag = r.tag;
                    if (op.kind == OpKind::read) op.value = r.value;
                    op.ack_set = r.ack_set;
                    op.confirm_set = r.confirm_set;
                    break;
                }
                case EventKind::repair_start: {
                    OpSummary op;
                    op.op_id = r.op_id;
                    op.kind = OpKind::repair;
                    op.actor = *r.actor;
                    op.invoke_t = r.time;
                    index[r.op_id] = ops_.size();
                    ops_.push_back(std::move(op));
                    break;
                }
                case EventKind::repair_end: {
                    auto it = index.find(r.op_id);
                    if (it == index.end()) throw std::invalid_argument("trace: repair-end without repair-start");
                    OpSummary& op = ops_[it->second];
                    op.completed = true;
                    op.respond_t = r.time;
                    op.tag = r.tag;
                    if (r.snap) op.repaired_entries = r.snap->entries;
                    break;
                }
                case EventKind::send: {
                    // an incomplete write still owns its tag once dispersal started
                    if (!r.msg) break;
                    if (r.msg->kind != PayloadKind::put_data && r.msg->kind != PayloadKind::code_elements) break;
                    auto it = index.find(r.op_id);
                    if (it == index.end()) break;
                    OpSummary& op = ops_[it->second];
                    if (op.kind == OpKind::write && !op.tag) op.tag = payload_tag(*r.msg);
                    break;
                }
                case EventKind::crash: {
                    if (r.actor && r.actor->kind != ProcessKind::server)
                        client_crashes_.emplace(*r.actor, r.time);
                    break;
                }
                default: break;
            }
        }
        build_timeline();
    }

    void build_timeline() {
        timeline_.assign(cfg_.n, {});
        for (const auto& r : trace_.records()) {
            if (!r.snap || !r.actor || r.actor->kind != ProcessKind::server) continue;
            TimelinePoint p;
            p.time = r.time;
            p.status = r.snap->status;
            p.tag = r.snap->tags.empty() ? std::optional<Tag>{} : std::optional<Tag>{max_tag(r.snap->tags)};
            p.tags = r.snap->tags;
            timeline_[r.actor->index - 1].push_back(std::move(p));
        }
    }

    struct TimelinePoint {
        std::uint64_t time{0};
        ServerStatus status{ServerStatus::active};
        std::optional<Tag> tag;
        std::vector<Tag> tags;
    };

    const TimelinePoint* state_at(std::uint32_t server, std::uint64_t t) const {
        const auto& tl = timeline_[server - 1];
        const TimelinePoint* best = nullptr;
        for (const auto& p : tl) {
            if (p.time > t) break;
            best = &p;
        }
        return best;
    }

    std::uint64_t client_crash_time(ProcessId pid) const {
        auto it = client_crashes_.find(pid);
        return it == client_crashes_.end() ? 0 : it->second;
    }

    bool crashed_after(ProcessId server, std::uint64_t t) const {
        for (const auto& r : trace_.records())
            if (r.event == EventKind::crash && r.actor == server && r.time > t) return true;
        return false;
    }

    Tag max_completed_write_tag_before(std::uint64_t t, bool include_reads = false) const {
        Tag best{};
        for (const auto& op : ops_) {
            if (!op.completed || op.respond_t >= t || !op.tag) continue;
            if (op.kind == OpKind::write || (include_reads && op.kind == OpKind::read))
                if (best < *op.tag) best = *op.tag;
        }
        return best;
    }

    // time the op's get-phase quorum was met; 0 when it never was
    std::uint64_t read_quorum_time(const OpSummary& op) const {
        const PayloadKind want =
            cfg_.protocol == Proto::radon_c ? PayloadKind::list_response : PayloadKind::tag_data_response;
        const std::uint32_t quorum =
            cfg_.protocol == Proto::radon_c ? quorums_c_.list_quorum : quorums_l_.majority;
        std::set<ProcessId> senders;
        for (const auto& r : trace_.records()) {
            if (r.event != EventKind::deliver || !r.msg) continue;
            if (r.msg->op_id != op.op_id || r.msg->phase != 0 || r.msg->kind != want) continue;
            senders.insert(r.msg->sender);
            if (senders.size() >= quorum) return r.time;
        }
        return 0;
    }

    // first `quorum` distinct-sender phase-0 responses the client consumed
    std::vector<std::pair<ProcessId, const Message*>> phase0_responses(const OpSummary& op, PayloadKind want,
                                                                       std::uint32_t quorum) const {
        std::vector<std::pair<ProcessId, const Message*>> out;
        std::set<ProcessId> seen;
        for (const auto& r : trace_.records()) {
            if (r.event != EventKind::deliver || !r.msg) continue;
            if (r.msg->op_id != op.op_id || r.msg->phase != 0 || r.msg->kind != want) continue;
            if (!seen.insert(r.msg->sender).second) continue;
            out.emplace_back(r.msg->sender, r.msg.get());
            if (out.size() >= quorum) break;
        }
        return out;
    }

    // The local tag never decreases while a server stays continuously
    // active; crash and repair boundaries start a fresh span (a repair may
    // legitimately restore an older tag).
    void check_tag_monotonicity(LemmaReport& rep) const {
        CheckResult cr;
        cr.name = "tag-monotonicity";
        for (std::uint32_t s = 1; s <= cfg_.n && cr.status != CheckResult::Status::failed; ++s) {
            std::optional<Tag> prev;
            for (const auto& p : timeline_[s - 1]) {
                if (p.status != ServerStatus::active) {
                    prev.reset();
                    continue;
                }
                if (!p.tag) continue;  // empty coded list right after repair
                ++cr.checked;
                if (prev && *p.tag < *prev) {
                    cr.status = CheckResult::Status::failed;
                    cr.detail = "server " + std::to_string(s) + " tag fell from " + to_string(*prev) +
                                " to " + to_string(*p.tag) + " while active (time " +
                                std::to_string(p.time) + ")";
                    break;
                }
                prev = p.tag;
            }
        }
        rep.checks.push_back(std::move(cr));
    }

    // Every snapshot of a coded list respects the delta+1 pruning bound.
    void check_list_bound(LemmaReport& rep) const {
        CheckResult cr;
        cr.name = "list-bound";
        for (std::uint32_t s = 1; s <= cfg_.n && cr.status != CheckResult::Status::failed; ++s) {
            for (const auto& p : timeline_[s - 1]) {
                ++cr.checked;
                if (p.tags.size() > static_cast<std::size_t>(cfg_.delta) + 1) {
                    cr.status = CheckResult::Status::failed;
                    cr.detail = "server " + std::to_string(s) + " held " + std::to_string(p.tags.size()) +
                                " list entries at time " + std::to_string(p.time);
                    break;
                }
            }
        }
        rep.checks.push_back(std::move(cr));
    }

    // ---- Lemma 1 (replication protocols, any trace) ----

    void check_lemma1(LemmaReport& rep) const {
        CheckResult cr;
        cr.name = "lemma1";
        std::vector<std::uint64_t> points;
        for (const auto& r : trace_.records())
            if (r.event == EventKind::crash || r.event == EventKind::repair_end || r.event == EventKind::respond)
                points.push_back(r.time);
        std::mt19937_64 rng(cfg_.seed ^ 0x9e3779b97f4a7c15ull);
        const std::uint64_t horizon = trace_.records().empty() ? 1 : trace_.records().back().time;
        for (int i = 0; i < 32; ++i) points.push_back(1 + rng() % horizon);
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        if (points.size() > 400) {
            std::vector<std::uint64_t> thin;
            for (std::size_t i = 0; i < points.size(); i += points.size() / 400 + 1) thin.push_back(points[i]);
            points = thin;
        }

        const std::uint32_t maj = quorums_l_.majority;
        for (std::uint64_t t : points) {
            std::vector<std::pair<std::uint32_t, Tag>> active;
            for (std::uint32_t s = 1; s <= cfg_.n; ++s) {
                const auto* p = state_at(s, t);
                if (p && p->status == ServerStatus::active && p->tag) active.push_back({s, *p->tag});
            }
            if (active.size() < maj) continue;
            std::vector<std::vector<std::size_t>> samples;
            std::vector<std::size_t> first;
            for (std::size_t i = 0; i < maj; ++i) first.push_back(i);
            samples.push_back(first);
            for (int extra = 0; extra < 3; ++extra) {
                std::vector<std::size_t> pick(active.size());
                for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
                for (std::size_t i = pick.size(); i > 1; --i) std::swap(pick[i - 1], pick[rng() % i]);
                pick.resize(maj);
                std::sort(pick.begin(), pick.end());
                samples.push_back(pick);
            }
            for (const auto& sample : samples) {
                Tag rho = active[sample[0]].second;
                for (std::size_t i : sample) rho = std::min(rho, active[i].second);
                for (const auto& op : ops_) {
                    if (!op.completed || op.invoke_t <= t || !op.tag) continue;
                    ++cr.checked;
                    const bool ok = op.kind == OpKind::write ? rho < *op.tag : !(*op.tag < rho);
                    if (!ok) {
                        cr.status = CheckResult::Status::failed;
                        cr.detail = "op " + std::to_string(op.op_id) + " tag " + to_string(*op.tag) +
                                    " below majority floor " + to_string(rho) + " at time " + std::to_string(t);
                        rep.checks.push_back(std::move(cr));
                        return;
                    }
                }
            }
        }
        rep.checks.push_back(std::move(cr));
    }

    // The N1-regime anchor: every completed op saw, before responding, a
    // point with a majority of active servers already at or above its tag.
    void check_precondition(LemmaReport& rep) const {
        const std::uint32_t maj = quorums_l_.majority;
        for (const auto& op : ops_) {
            if (!op.completed || op.kind == OpKind::repair || !op.tag) continue;
            std::vector<std::uint64_t> probes{op.invoke_t};
            for (std::uint32_t s = 1; s <= cfg_.n; ++s)
                for (const auto& p : timeline_[s - 1])
                    if (p.time >= op.invoke_t && p.time <= op.respond_t) probes.push_back(p.time);
            std::sort(probes.begin(), probes.end());
            bool found = false;
            for (std::uint64_t t : probes) {
                std::uint32_t good = 0;
                for (std::uint32_t s = 1; s <= cfg_.n; ++s) {
                    const auto* p = state_at(s, t);
                    if (p && p->status == ServerStatus::active && p->tag && !(*p->tag < *op.tag)) ++good;
                }
                if (good >= maj) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                rep.precondition_holds = false;
                rep.precondition_counterexample_op = op.op_id;
                return;
            }
        }
    }

    // ---- Lemma 2 (coded protocol, N1-compliant delta-bounded traces) ----

    void check_lemma2(LemmaReport& rep) const {
        const bool n1_ok = cfg_.condition != Condition::none && outcome_.condition_violations == 0;
        const std::uint32_t measured = measure_delta();
        const bool delta_ok = measured <= cfg_.delta;
        if (!n1_ok || !delta_ok) {
            CheckResult cr;
            cr.name = "lemma2";
            cr.status = CheckResult::Status::skipped;
            cr.detail = !n1_ok ? "trace is not N1-compliant" : "measured delta exceeds configured bound";
            rep.checks.push_back(std::move(cr));
            return;
        }
        MdsCodec codec(CodecParams{cfg_.n, cfg_.k});
        const Value v0 = zero_value(cfg_.value_size);
        std::map<Tag, const Value*> written;
        for (const auto& op : ops_)
            if (op.kind == OpKind::write && op.tag && op.value) written[*op.tag] = op.value.get();

        auto value_of = [&](const Tag& t) -> const Value* {
            if (t == Tag{}) return &v0;
            auto it = written.find(t);
            return it == written.end() ? nullptr : it->second;
        };

        CheckResult part1;
        part1.name = "lemma2-part1";
        for (const auto& op : ops_) {
            if (op.kind != OpKind::repair || !op.completed || !op.repaired_entries) continue;
            const Tag sigma = max_completed_write_tag_before(op.invoke_t, true);
            const Value* v = value_of(sigma);
            if (!v) continue;
            ++part1.checked;
            const CodedElement want = codec.project(*v, op.actor.index);
            bool present = false;
            for (const auto& e : *op.repaired_entries)
                if (e.tag == sigma && e.element == want) present = true;
            if (!present) {
                part1.status = CheckResult::Status::failed;
                part1.detail = "repair " + std::to_string(op.op_id) + " on server " +
                               std::to_string(op.actor.index) + " lost tag " + to_string(sigma);
                break;
            }
        }
        rep.checks.push_back(std::move(part1));

        CheckResult part2;
        part2.name = "lemma2-part2";
        for (const auto& op : ops_) {
            if (op.kind != OpKind::read) continue;
            auto resp = phase0_responses(op, PayloadKind::list_response, quorums_c_.list_quorum);
            if (resp.size() < quorums_c_.list_quorum) continue;  // not a valid read
            const Tag sigma = max_completed_write_tag_before(op.invoke_t, true);
            const Value* v = value_of(sigma);
            if (!v) continue;
            ++part2.checked;
            std::uint32_t holding = 0;
            for (const auto& [sender, msg] : resp) {
                const auto& entries = std::get<ListResponse>(msg->body).entries;
                const CodedElement want = codec.project(*v, sender.index);
                for (const auto& e : entries)
                    if (e.tag == sigma && e.element == want) {
                        ++holding;
                        break;
                    }
            }
            if (holding < cfg_.k) {
                part2.status = CheckResult::Status::failed;
                part2.detail = "read " + std::to_string(op.op_id) + " saw tag " + to_string(sigma) +
                               " in only " + std::to_string(holding) + " lists";
                break;
            }
        }
        rep.checks.push_back(std::move(part2));

        CheckResult part3;
        part3.name = "lemma2-part3";
        for (const auto& op : ops_) {
            if (op.kind != OpKind::write || !op.tag) continue;
            auto resp = phase0_responses(op, PayloadKind::tag_response, quorums_c_.majority);
            if (resp.size() < quorums_c_.majority) continue;
            const Tag sigma = max_completed_write_tag_before(op.invoke_t, true);
            ++part3.checked;
            bool found = false;
            for (const auto& [sender, msg] : resp)
                if (!(std::get<TagResponse>(msg->body).tag < sigma)) found = true;
            if (!found) {
                part3.status = CheckResult::Status::failed;
                part3.detail = "write " + std::to_string(op.op_id) + " saw no get-tag response at or above " +
                               to_string(sigma);
                break;
            }
        }
        rep.checks.push_back(std::move(part3));
    }

    // Every confirm ack implies the server held the pair continuously from
    // its put-data consumption to the confirm consumption.
    void check_seen_hygiene(LemmaReport& rep) const {
        CheckResult cr;
        cr.name = "seen-hygiene";
        for (const auto& r : trace_.records()) {
            if (r.event != EventKind::send || !r.msg) continue;
            const Message& m = *r.msg;
            if (m.kind != PayloadKind::ack || m.phase != 2 || m.sender.kind != ProcessKind::server) continue;
            // find the matching put-data consumption
            std::uint64_t put_time = 0;
            for (const auto& d : trace_.records()) {
                if (d.time >= r.time) break;
                if (d.event != EventKind::deliver || !d.msg) continue;
                if (d.msg->recipient == m.sender && d.msg->op_id == m.op_id &&
                    d.msg->kind == PayloadKind::put_data)
                    put_time = d.time;
            }
            ++cr.checked;
            if (put_time == 0) {
                cr.status = CheckResult::Status::failed;
                cr.detail = "confirm ack without a prior put-data consumption";
                break;
            }
            bool crashed_between = false;
            for (const auto& d : trace_.records()) {
                if (d.time <= put_time) continue;
                if (d.time >= r.time) break;
                if (d.event == EventKind::crash && d.actor == m.sender) crashed_between = true;
            }
            if (crashed_between) {
                cr.status = CheckResult::Status::failed;
                cr.detail = "server " + std::to_string(m.sender.index) + " acked a confirm across a crash";
                break;
            }
        }
        rep.checks.push_back(std::move(cr));
    }

    const Trace& trace_;
    ScenarioConfig cfg_;
    RunOutcome outcome_;
    QuorumsL quorums_l_{};
    QuorumsC quorums_c_{};
    std::vector<OpSummary> ops_;
    std::vector<std::vector<TimelinePoint>> timeline_;
    std::map<ProcessId, std::uint64_t> client_crashes_;
};

}  // namespace radon
