#pragma once

// One run's verdict bundle: liveness, atomicity, measured delta, costs,
// lemma checks and scheduler flags, rendered as a human table or as
// machine-readable key=value lines. Everything here derives from the trace
// plus the run outcome flags.

#include <ostream>

#include "analysis.hpp"

namespace radon {

struct RunReport {
    ScenarioConfig cfg;
    RunOutcome outcome;
    AtomicityVerdict atomicity;
    LivenessVerdict liveness;
    std::uint32_t measured_delta{0};
    CostReport costs;
    LemmaReport lemmas;

    static RunReport build(const ScenarioConfig& cfg, const RunOutcome& outcome, const Trace& trace) {
        TraceAnalysis a(trace, cfg, outcome);
        RunReport r;
        r.cfg = cfg;
        r.outcome = outcome;
        r.atomicity = a.check_atomicity();
        r.liveness = a.check_liveness();
        r.measured_delta = a.measure_delta();
        r.costs = a.measure_costs();
        r.lemmas = a.check_lemma_invariants();
        return r;
    }

    bool check(const std::string& name) const {
        if (name == "atomicity") return atomicity.atomic;
        if (name == "liveness") return liveness.live && !liveness.inconclusive;
        if (name == "costs") return costs.ok();
        if (name == "lemmas") return lemmas.all_ok();
        if (name == "delta") return measured_delta <= cfg.delta;
        throw ConfigError("unknown check '" + name + "' (use atomicity,liveness,costs,lemmas,delta)");
    }

    void render_human(std::ostream& os) const {
        os << "run: protocol=" << proto_name(cfg.protocol) << " n=" << cfg.n;
        if (cfg.protocol == Proto::radon_c) os << " k=" << cfg.k << " delta=" << cfg.delta;
        os << " condition=" << condition_name(cfg.condition);
        if (cfg.condition != Condition::none)
            os << " alpha=" << cfg.alpha << " (protects ceil(alpha*n)=" << cfg.alpha_count() << ")";
        os << " seed=" << cfg.seed << '\n';
        os << "  events=" << outcome.events << (outcome.quiescent ? " (quiescent)" : "")
           << (outcome.budget_exhausted ? " (budget exhausted)" : "") << '\n';
        os << "  atomicity: " << (atomicity.atomic ? "atomic" : "VIOLATION " + atomicity.property) << '\n';
        if (!atomicity.atomic)
            os << "    witness: ops " << atomicity.op_a << " / " << atomicity.op_b << " -- " << atomicity.detail
               << '\n';
        os << "  liveness:  "
           << (liveness.inconclusive ? "inconclusive" : liveness.live ? "live" : "VIOLATION") << '\n';
        for (auto op : liveness.starved_ops) os << "    starved op " << op << '\n';
        for (auto s : liveness.stalled_repairs) os << "    stalled repair on server " << s << '\n';
        os << "  measured delta: " << measured_delta << '\n';
        os << "  costs (units): write=" << costs.write_cost << "/" << costs.write_formula
           << (costs.write_exact ? " exact" : " MISMATCH") << " read=" << costs.read_cost << "<="
           << costs.read_formula << (costs.read_within ? " ok" : " EXCEEDED") << " storage=" << costs.storage_max
           << "<=" << costs.storage_formula << (costs.storage_within ? " ok" : " EXCEEDED") << '\n';
        for (const auto& c : lemmas.checks) {
            os << "  " << c.name << ": "
               << (c.status == CheckResult::Status::passed
                       ? "pass"
                       : c.status == CheckResult::Status::failed ? "FAIL" : "skipped")
               << " (" << c.checked << " checked";
            if (!c.detail.empty()) os << "; " << c.detail;
            os << ")\n";
        }
        os << "  scheduler: deferrals=" << outcome.deferrals << " skipped-crashes=" << outcome.skipped_crashes
           << " condition-violations=" << outcome.condition_violations << " stuck-reads=" << outcome.stuck_reads
           << " crashes=" << outcome.crash_count << " repairs=" << outcome.repairs_completed << "/"
           << outcome.repairs_started << '\n';
    }

    void render_machine(std::ostream& os) const {
        os << "protocol=" << proto_name(cfg.protocol) << " n=" << cfg.n << " k=" << cfg.k
           << " delta=" << cfg.delta << " condition=" << condition_name(cfg.condition) << " seed=" << cfg.seed
           << " atomic=" << (atomicity.atomic ? 1 : 0)
           << " live=" << (liveness.inconclusive ? -1 : liveness.live ? 1 : 0)
           << " measured_delta=" << measured_delta << " write_cost=" << costs.write_cost
           << " read_cost=" << costs.read_cost << " storage_max=" << costs.storage_max
           << " lemmas_ok=" << (lemmas.all_ok() ? 1 : 0)
           << " precondition=" << (lemmas.precondition_holds ? 1 : 0)
           << " deferrals=" << outcome.deferrals << " violations=" << outcome.condition_violations
           << " stuck=" << outcome.stuck_reads << " crashes=" << outcome.crash_count
           << " repairs=" << outcome.repairs_completed << " events=" << outcome.events
           << " quiescent=" << (outcome.quiescent ? 1 : 0) << '\n';
    }
};

}  // namespace radon
