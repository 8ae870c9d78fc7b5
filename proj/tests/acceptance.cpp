// Acceptance suite: one criterion per section, one pass/fail line each.
// Runs everything by default; pass criterion numbers as arguments to run a
// subset. Exit code 0 only when every executed criterion passes.

#include <chrono>
#include <sstream>
#include <cstring>
#include <iostream>
#include <random>

#include "radon/report.hpp"

using namespace radon;

namespace {

struct Outcome {
    bool pass{true};
    std::string note;

    void fail(const std::string& why) {
        if (pass) note = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Value random_value(std::mt19937_64& rng, std::size_t len) {
    Value v;
    v.bytes.resize(len);
    for (auto& b : v.bytes) b = static_cast<std::uint8_t>(rng());
    return v;
}

// ---- criterion 1: codec round-trip and re-encode consistency ----

Outcome criterion1() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    for (std::uint32_t n = 1; n <= 6 && o.pass; ++n) {
        for (std::uint32_t k = 1; k <= n && o.pass; ++k) {
            MdsCodec codec({n, k});
            for (int round = 0; round < 100 && o.pass; ++round) {
                Value v = random_value(rng, static_cast<std::size_t>(k) * 3);
                auto frags = codec.encode(v);
                for (std::uint32_t i = 0; i < n; ++i)
                    if (!(codec.project(v, i + 1) == frags[i])) o.fail("project != encode column");
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != k) continue;
                    std::vector<CodedElement> subset;
                    for (std::uint32_t i = 0; i < n; ++i)
                        if (mask & (1u << i)) subset.push_back(frags[i]);
                    if (!(codec.decode(subset) == v)) {
                        o.fail("decode mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
                        break;
                    }
                    const std::uint32_t target = 1 + (mask + round) % n;
                    if (!(codec.re_encode(subset, target) == frags[target - 1])) {
                        o.fail("re_encode != project at n=" + std::to_string(n) + " k=" + std::to_string(k));
                        break;
                    }
                }
            }
        }
    }
    return o;
}

// ---- criterion 2: Table-1 cost reproduction ----

RunReport run_report(const ScenarioConfig& cfg) {
    RunResult res = run_scenario(cfg);
    return RunReport::build(cfg, res.outcome, res.trace);
}

Outcome criterion2() {
    Outcome o;
    for (std::uint32_t n : {6u, 8u}) {
        for (Proto p : {Proto::radon_l, Proto::radon_s}) {
            ScenarioConfig cfg;
            cfg.protocol = p;
            cfg.n = n;
            cfg.value_size = 12;
            cfg.delivery = DeliveryPolicy::fifo;
            cfg.writers = 1;
            cfg.readers = 1;
            cfg.ops_per_client = 3;
            cfg.seed = 5;
            RunReport rep = run_report(cfg);
            if (!rep.liveness.live) o.fail("replication cost run not live");
            if (rep.costs.write_cost != double(n) || !rep.costs.write_exact)
                o.fail("write cost != n for " + std::string(proto_name(p)));
            if (rep.costs.read_cost != 2.0 * n) o.fail("read cost != 2n for " + std::string(proto_name(p)));
            if (rep.costs.storage_max != double(n)) o.fail("storage != n for " + std::string(proto_name(p)));
        }
    }
    struct CodedCase {
        std::uint32_t n, k, delta;
    };
    for (CodedCase cc : {CodedCase{6, 3, 1}, CodedCase{8, 2, 2}}) {
        ScenarioConfig cfg;
        cfg.protocol = Proto::radon_c;
        cfg.n = cc.n;
        cfg.k = cc.k;
        cfg.delta = cc.delta;
        cfg.value_size = 12;
        cfg.delivery = DeliveryPolicy::fifo;
        cfg.writers = 1;
        cfg.readers = 1;
        cfg.ops_per_client = cc.delta + 3;
        cfg.seed = 5;
        RunReport rep = run_report(cfg);
        const double nk = double(cc.n) / cc.k;
        if (!rep.liveness.live) o.fail("coded cost run not live");
        if (rep.costs.write_cost != nk || !rep.costs.write_exact) o.fail("coded write cost != n/k");
        if (rep.costs.read_cost > (cc.delta + 2) * nk + 1e-9) o.fail("coded read cost above bound");
        if (rep.costs.read_cost != (cc.delta + 2) * nk)
            o.fail("coded read cost does not reach (delta+2)n/k with full lists");
        if (rep.costs.storage_max != (cc.delta + 1) * nk)
            o.fail("coded storage does not reach (delta+1)n/k with full lists");
    }
    return o;
}

// ---- criterion 3: replication safety and liveness under N1 ----

Outcome criterion3() {
    Outcome o;
    int runs = 0;
    for (std::uint32_t n : {5u, 7u, 9u}) {
        for (std::uint64_t seed = 1; seed <= 167; ++seed) {
            ScenarioConfig cfg;
            cfg.protocol = Proto::radon_l;
            cfg.n = n;
            cfg.value_size = 8;
            cfg.alpha = 0.76;
            cfg.condition = Condition::n1;
            cfg.writers = 2;
            cfg.readers = 2;
            cfg.ops_per_client = 5;
            cfg.fault.kind = FaultGenKind::random_faults;
            cfg.fault.rate = 0.12;
            cfg.seed = seed;
            RunResult res = run_scenario(cfg);
            TraceAnalysis a(res.trace, cfg, res.outcome);
            ++runs;
            if (res.outcome.condition_violations != 0) o.fail("condition violated at n=" + std::to_string(n));
            if (!a.check_atomicity().atomic)
                o.fail("atomicity violated at n=" + std::to_string(n) + " seed=" + std::to_string(seed));
            auto live = a.check_liveness();
            if (!live.live || live.inconclusive)
                o.fail("liveness failed at n=" + std::to_string(n) + " seed=" + std::to_string(seed));
            if (!a.windows_honored()) o.fail("a protected server crashed inside a window");
            auto lem = a.check_lemma_invariants();
            for (const auto& c : lem.checks)
                if (c.status == CheckResult::Status::failed) o.fail(c.name + ": " + c.detail);
            if (!lem.precondition_holds) o.fail("majority anchor missing despite n1 enforcement");
            if (!o.pass) return o;
        }
    }
    o.note = std::to_string(runs) + " runs";
    return o;
}

// ---- criterion 4: coded safety, liveness and lemma invariants under N1 ----

Outcome criterion4() {
    Outcome o;
    int runs = 0;
    std::uint64_t repairs_checked = 0;
    struct Pair {
        std::uint32_t n, k;
        double alpha;
    };
    for (Pair p : {Pair{5, 3, 0.9}, Pair{8, 2, 0.8125}}) {
        for (std::uint64_t seed = 1; seed <= 250; ++seed) {
            ScenarioConfig cfg;
            cfg.protocol = Proto::radon_c;
            cfg.n = p.n;
            cfg.k = p.k;
            cfg.value_size = 12;
            cfg.alpha = p.alpha;
            cfg.condition = Condition::n1;
            cfg.writers = 2;
            cfg.readers = 2;
            cfg.ops_per_client = 5;
            cfg.delta = cfg.writers * cfg.ops_per_client;  // total writes bound the concurrency
            cfg.fault.kind = FaultGenKind::random_faults;
            cfg.fault.rate = 0.1;
            cfg.seed = seed;
            RunResult res = run_scenario(cfg);
            TraceAnalysis a(res.trace, cfg, res.outcome);
            ++runs;
            if (res.outcome.condition_violations != 0) o.fail("condition violated");
            if (a.measure_delta() > cfg.delta) o.fail("measured delta above the configured bound");
            if (!a.check_atomicity().atomic) o.fail("atomicity violated at seed " + std::to_string(seed));
            auto live = a.check_liveness();
            if (!live.live || live.inconclusive) o.fail("liveness failed at seed " + std::to_string(seed));
            auto lem = a.check_lemma_invariants();
            for (const auto& c : lem.checks) {
                if (c.status == CheckResult::Status::failed) o.fail(c.name + ": " + c.detail);
                if (c.status == CheckResult::Status::skipped) o.fail(c.name + " skipped: " + c.detail);
                if (c.name == "lemma2-part1") repairs_checked += c.checked;
            }
            if (!o.pass) return o;
        }
    }
    if (repairs_checked == 0) o.fail("no repair was ever exercised, the fault load is too weak");
    o.note = std::to_string(runs) + " runs, " + std::to_string(repairs_checked) + " repairs checked";
    return o;
}

// ---- criterion 5: the impossibility adversary and its deferral ----

Outcome criterion5() {
    Outcome o;
    ScenarioConfig cfg;
    cfg.protocol = Proto::radon_l;
    cfg.n = 3;
    cfg.value_size = 8;
    cfg.seed = 1;
    apply_preset("theorem1", cfg);

    RunResult starved = run_scenario(cfg);
    TraceAnalysis sa(starved.trace, cfg, starved.outcome);
    auto live = sa.check_liveness();
    if (live.live || live.inconclusive) o.fail("theorem1 schedule did not starve the write");
    if (live.starved_ops.size() != 1) o.fail("expected exactly the write to starve");
    if (!sa.at_most_one_down()) o.fail("more than one server was down at once");
    if (starved.outcome.crash_count != cfg.n || starved.outcome.repairs_completed != cfg.n)
        o.fail("adversary did not crash and repair each contacted server once");

    ScenarioConfig under_n1 = cfg;
    under_n1.condition = Condition::n1;
    under_n1.alpha = 0.76;
    RunResult deferred = run_scenario(under_n1);
    TraceAnalysis da(deferred.trace, under_n1, deferred.outcome);
    if (!da.check_liveness().live) o.fail("the same requests under n1 still starved the write");
    if (!da.check_atomicity().atomic) o.fail("n1 variant not atomic");
    if (deferred.outcome.deferrals < cfg.n) o.fail("crash requests were not deferred under n1");
    if (!da.windows_honored()) o.fail("a window was violated under n1");
    return o;
}

// ---- criterion 6: unconditional safety of the three-phase protocol ----

ScenarioConfig chaos_config(Proto p, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.protocol = p;
    cfg.n = 5;
    cfg.value_size = 8;
    cfg.condition = Condition::none;
    cfg.writers = 2;
    cfg.readers = 2;
    cfg.ops_per_client = 4;
    cfg.delivery = seed % 2 ? DeliveryPolicy::max_reorder : DeliveryPolicy::random_delay;
    cfg.fault.kind = FaultGenKind::random_faults;
    cfg.fault.rate = 0.05 * (1 + seed % 10);  // rates 0.05 .. 0.5
    cfg.seed = seed;
    return cfg;
}

Outcome criterion6() {
    Outcome o;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        ScenarioConfig cfg = chaos_config(Proto::radon_s, seed);
        RunResult res = run_scenario(cfg);
        TraceAnalysis a(res.trace, cfg, res.outcome);
        auto v = a.check_atomicity();
        if (!v.atomic) {
            o.fail("radon-s execution violated atomicity at seed " + std::to_string(seed) + ": " + v.detail);
            return o;
        }
        // the unconditional invariants must also survive every schedule
        for (const auto& c : a.check_lemma_invariants().checks)
            if (c.status == CheckResult::Status::failed) {
                o.fail("radon-s " + c.name + " failed at seed " + std::to_string(seed) + ": " + c.detail);
                return o;
            }
    }
    // the same adversary must be strong enough to break the two-phase protocol
    bool counterexample = false;
    std::uint64_t at_seed = 0;
    for (std::uint64_t seed = 1; seed <= 1000 && !counterexample; ++seed) {
        ScenarioConfig cfg = chaos_config(Proto::radon_l, seed);
        RunResult res = run_scenario(cfg);
        TraceAnalysis a(res.trace, cfg, res.outcome);
        if (!a.check_atomicity().atomic) {
            counterexample = true;
            at_seed = seed;
            break;
        }
        auto lem = a.check_lemma_invariants();
        if (!lem.precondition_holds) {
            counterexample = true;
            at_seed = seed;
            break;
        }
    }
    if (!counterexample)
        o.fail("no atomicity or majority-anchor counterexample against radon-l: adversary too weak");
    else
        o.note = "radon-l counterexample at seed " + std::to_string(at_seed);
    return o;
}

// ---- criterion 7: three-phase liveness under N2 ----

Outcome criterion7() {
    Outcome o;
    int runs = 0;
    for (std::uint32_t n : {5u, 7u}) {
        for (std::uint64_t seed = 1; seed <= 150; ++seed) {
            ScenarioConfig cfg;
            cfg.protocol = Proto::radon_s;
            cfg.n = n;
            cfg.value_size = 8;
            cfg.condition = Condition::n2;
            cfg.alpha = 0.76;
            cfg.writers = 2;
            cfg.readers = 2;
            cfg.ops_per_client = 4;
            cfg.fault.kind = FaultGenKind::random_faults;
            cfg.fault.rate = 0.1;
            cfg.seed = seed;
            RunResult res = run_scenario(cfg);
            TraceAnalysis a(res.trace, cfg, res.outcome);
            ++runs;
            auto live = a.check_liveness();
            if (!live.live || live.inconclusive)
                o.fail("liveness failed at n=" + std::to_string(n) + " seed=" + std::to_string(seed));
            if (res.outcome.condition_violations != 0) o.fail("condition violated");
            for (const auto& op : a.ops()) {
                if (op.kind == OpKind::repair || !op.completed) continue;
                if (!op.ack_set || !op.confirm_set) {
                    o.fail("completed op without recorded ack sets");
                    continue;
                }
                std::set<ProcessId> alpha(op.ack_set->begin(), op.ack_set->end());
                for (const auto& s : *op.confirm_set)
                    if (!alpha.count(s)) o.fail("confirm ack counted from outside the recorded set");
            }
            if (!o.pass) return o;
        }
    }
    o.note = std::to_string(runs) + " runs";
    return o;
}

// ---- criterion 8: checker self-test on mutated traces ----

Outcome criterion8() {
    Outcome o;
    ScenarioConfig cfg;
    cfg.protocol = Proto::radon_l;
    cfg.n = 5;
    cfg.value_size = 8;
    cfg.seed = 11;
    cfg.writers = 2;
    cfg.readers = 1;
    cfg.ops_per_client = 2;
    RunResult res = run_scenario(cfg);
    TraceAnalysis clean(res.trace, cfg, res.outcome);
    if (!clean.check_atomicity().atomic) {
        o.fail("baseline run unexpectedly non-atomic");
        return o;
    }
    std::uint64_t latest_write = 0;
    Tag max_tag_seen{};
    for (const auto& op : clean.ops())
        if (op.kind == OpKind::write && op.completed && max_tag_seen < *op.tag) {
            max_tag_seen = *op.tag;
            latest_write = op.op_id;
        }

    auto rebuild_with = [&](const std::vector<TraceRecord>& extra) {
        Trace t;
        for (auto r : res.trace.records()) t.append(std::move(r));
        for (auto r : extra) t.append(std::move(r));
        return t;
    };

    {  // stale read injection -> P1 with the (write, read) witness pair
        std::vector<TraceRecord> extra(2);
        extra[0].event = EventKind::invoke;
        extra[0].actor = reader_id(9);
        extra[0].op_id = 900001;
        extra[0].op = OpKind::read;
        extra[0].payload_kind = "read";
        extra[1] = extra[0];
        extra[1].event = EventKind::respond;
        extra[1].tag = Tag{};
        extra[1].value = std::make_shared<const Value>(zero_value(cfg.value_size));
        Trace t = rebuild_with(extra);
        TraceAnalysis a(t, cfg, res.outcome);
        auto v = a.check_atomicity();
        if (v.atomic) o.fail("stale read injection not detected");
        else if (v.property != "P1") o.fail("stale read detected as " + v.property + ", expected P1");
        else if (v.op_b != 900001) o.fail("P1 witness does not name the injected read");
        else if (v.op_a != latest_write) {
            // any completed write with a higher tag is a valid anchor; require one
            bool anchor_ok = false;
            for (const auto& op : clean.ops())
                if (op.op_id == v.op_a && op.kind == OpKind::write && op.completed) anchor_ok = true;
            if (!anchor_ok) o.fail("P1 witness anchor is not a completed write");
        }
    }
    {  // write tag collision -> P2 naming both writes
        std::vector<TraceRecord> extra(2);
        extra[0].event = EventKind::invoke;
        extra[0].actor = writer_id(9);
        extra[0].op_id = 900002;
        extra[0].op = OpKind::write;
        extra[0].payload_kind = "write";
        extra[0].value = std::make_shared<const Value>(zero_value(cfg.value_size));
        extra[1] = extra[0];
        extra[1].event = EventKind::respond;
        extra[1].tag = max_tag_seen;
        Trace t = rebuild_with(extra);
        TraceAnalysis a(t, cfg, res.outcome);
        auto v = a.check_atomicity();
        if (v.atomic) o.fail("write tag collision not detected");
        else if (v.property != "P2") o.fail("collision detected as " + v.property + ", expected P2");
        else if (!((v.op_a == latest_write && v.op_b == 900002) ||
                   (v.op_b == latest_write && v.op_a == 900002)))
            o.fail("P2 witness does not name the colliding writes");
    }
    return o;
}

// ---- criterion 9: determinism of every family ----

Outcome criterion9() {
    Outcome o;
    std::vector<ScenarioConfig> families;
    {
        ScenarioConfig c;
        c.protocol = Proto::radon_l;
        c.n = 6;
        c.value_size = 12;
        c.delivery = DeliveryPolicy::fifo;
        c.seed = 5;
        families.push_back(c);
    }
    {
        ScenarioConfig c;
        c.protocol = Proto::radon_c;
        c.n = 8;
        c.k = 2;
        c.delta = 10;
        c.value_size = 12;
        c.condition = Condition::n1;
        c.alpha = 0.8125;
        c.writers = 2;
        c.readers = 2;
        c.ops_per_client = 5;
        c.fault.kind = FaultGenKind::random_faults;
        c.fault.rate = 0.1;
        c.seed = 77;
        families.push_back(c);
    }
    {
        ScenarioConfig c;
        c.protocol = Proto::radon_l;
        c.n = 7;
        c.value_size = 8;
        c.condition = Condition::n1;
        c.alpha = 0.76;
        c.writers = 2;
        c.readers = 2;
        c.ops_per_client = 5;
        c.fault.kind = FaultGenKind::random_faults;
        c.fault.rate = 0.12;
        c.seed = 123;
        families.push_back(c);
    }
    families.push_back(chaos_config(Proto::radon_s, 9));
    families.push_back(chaos_config(Proto::radon_l, 9));
    {
        ScenarioConfig c;
        c.protocol = Proto::radon_s;
        c.n = 5;
        c.value_size = 8;
        c.condition = Condition::n2;
        c.alpha = 0.76;
        c.writers = 2;
        c.readers = 2;
        c.ops_per_client = 4;
        c.fault.kind = FaultGenKind::random_faults;
        c.fault.rate = 0.1;
        c.seed = 55;
        families.push_back(c);
    }
    {
        ScenarioConfig c;
        c.protocol = Proto::radon_l;
        c.n = 3;
        c.value_size = 8;
        c.seed = 1;
        apply_preset("theorem1", c);
        families.push_back(c);
    }
    for (const auto& cfg : families) {
        RunResult a = run_scenario(cfg);
        RunResult b = run_scenario(cfg);
        if (a.trace.to_text(cfg.value_size) != b.trace.to_text(cfg.value_size)) {
            o.fail(std::string("non-deterministic trace for ") + proto_name(cfg.protocol) + " seed " +
                   std::to_string(cfg.seed));
            return o;
        }
        std::ostringstream ra, rb;
        RunReport::build(cfg, a.outcome, a.trace).render_machine(ra);
        RunReport::build(cfg, b.outcome, b.trace).render_machine(rb);
        if (ra.str() != rb.str()) {
            o.fail(std::string("non-deterministic report for ") + proto_name(cfg.protocol));
            return o;
        }
    }
    o.note = std::to_string(families.size()) + " families, byte-identical reruns";
    return o;
}

struct Criterion {
    int id;
    const char* text;
    double limit_s;
    Outcome (*fn)();
};

}  // namespace

int main(int argc, char** argv) {
    const Criterion all[] = {
        {1, "codec round-trip and re-encode consistency (n<=6, 100 values, all subsets)", 10, criterion1},
        {2, "Table-1 costs: replication exact, coded exact/bounded with full lists", 30, criterion2},
        {3, "replication protocol atomic and live on 501 seeded N1 runs (n=5,7,9)", 300, criterion3},
        {4, "coded protocol atomic, live, lemma-checked on 500 seeded N1 runs", 600, criterion4},
        {5, "one-at-a-time adversary starves a write; same requests defer under n1", 5, criterion5},
        {6, "three-phase protocol never non-atomic over 1000 chaotic runs; two-phase breaks", 600, criterion6},
        {7, "three-phase protocol live under N2 with confirm acks inside the recorded set", 300, criterion7},
        {8, "checker self-test: injected mutations rejected with correct witnesses", 5, criterion8},
        {9, "identical seeds reproduce byte-identical traces in every family", 60, criterion9},
    };

    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        auto t0 = Clock::now();
        Outcome o = c.fn();
        const double secs = seconds_since(t0);
        if (secs >= c.limit_s) o.fail("runtime " + std::to_string(secs) + "s over the " +
                                      std::to_string(c.limit_s) + "s limit");
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.text;
        if (!o.note.empty()) std::cout << " -- " << o.note;
        char buf[32];
        std::snprintf(buf, sizeof(buf), " (%.1fs)", secs);
        std::cout << buf << std::endl;
        if (!o.pass) ++failures;
    }
    if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
