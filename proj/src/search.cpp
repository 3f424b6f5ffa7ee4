#include "gatesynth/search.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace gatesynth {

std::vector<int> SearchResult::unsat_depths() const {
    std::vector<int> out;
    for (const DepthRecord& r : record)
        if (r.verdict == OutcomeKind::Unsat || r.verdict == OutcomeKind::Infeasible)
            out.push_back(r.depth);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct DepthRun {
    DepthRecord record;
    std::optional<std::pair<Circuit, int>> witness;  // circuit + phase
    bool cancelled = false;
};

void log_depth(std::ostream* log, std::mutex& mu, const DepthRecord& r) {
    if (!log) return;
    std::lock_guard<std::mutex> lock(mu);
    (*log) << "[search] d=" << r.depth << " vars=" << r.stats.variables
           << " clauses=" << r.stats.clauses << " verdict=" << outcome_kind_str(r.verdict)
           << (r.by_precheck ? " precheck=1" : "") << " t=" << r.solve_seconds << "s";
    if (!r.detail.empty()) (*log) << " detail=\"" << r.detail << "\"";
    (*log) << "\n";
}

// Encode, solve, verify one gate count. `cancel` aborts a running solver.
DepthRun solve_depth(const TargetSpec& target, const GateSet& gate_set,
                     const SearchOptions& opts, int depth,
                     const std::vector<TypeBound>& bounds, const std::string& name,
                     const std::function<bool()>& cancel) {
    DepthRun run;
    run.record.depth = depth;

    SynthesisProblem p;
    p.target = target;
    p.gate_set = &gate_set;
    p.depth = depth;
    p.phase_multiples = opts.phase_multiples;
    p.type_bounds = bounds;
    p.width_policy = opts.width_policy;
    p.width_override = opts.width_override;

    EncodeOutcome enc = encode_instance(p);
    if (std::holds_alternative<Infeasibility>(enc)) {
        run.record.verdict = OutcomeKind::Infeasible;
        run.record.by_precheck = true;
        run.record.detail = std::get<Infeasibility>(enc).reason;
        return run;
    }
    EncodedInstance& inst = std::get<EncodedInstance>(enc);
    run.record.stats = inst.stats;

    const std::filesystem::path dir(opts.artifact_dir.empty() ? "." : opts.artifact_dir);
    std::filesystem::create_directories(dir);
    const std::string cnf_path = (dir / (name + ".cnf")).string();
    const std::string out_path = (dir / (name + ".out")).string();
    inst.formula.write_dimacs_file(cnf_path);

    const RawSolve raw = run_solver(opts.solver, cnf_path, out_path, cancel);
    run.record.solve_seconds = raw.wall_seconds;
    switch (raw.verdict) {
        case RawVerdict::Unsat:
            run.record.verdict = OutcomeKind::Unsat;
            return run;
        case RawVerdict::Timeout:
            run.record.verdict = OutcomeKind::Timeout;
            run.record.detail = raw.detail;
            run.cancelled = raw.detail == "cancelled";
            return run;
        case RawVerdict::Error:
            run.record.verdict = OutcomeKind::SolverError;
            run.record.detail = raw.detail;
            return run;
        case RawVerdict::Sat:
            break;
    }

    auto [circuit, phase] = decode_circuit(raw.model, inst.vars, target.n);
    const VerificationReport report =
        check_implements(circuit, gate_set, target, inst.vars.encoded_phases());
    if (!report.pass)
        throw std::logic_error("search: solver model failed exact verification (" +
                               report.describe() + "); encoder bug");
    if (inst.vars.encoded_phases().size() > 1 && report.phase_multiple != phase) {
        // The decoded phase selector must agree with what the matrix product
        // actually implements.
        throw std::logic_error("search: phase selector disagrees with verification");
    }
    run.record.verdict = OutcomeKind::Sat;
    run.witness = std::make_pair(std::move(circuit), phase);
    return run;
}

}  // namespace

SearchResult find_min_circuit(const TargetSpec& target, const GateSet& gate_set,
                              const SearchOptions& opts) {
    if (opts.d_max < 1 || opts.d_max < opts.d_min)
        throw std::invalid_argument("find_min_circuit: bad depth range");
    SearchResult result;

    // An identity target needs no gates; answer without touching the solver.
    if (opts.d_min <= 1) {
        Circuit empty;
        empty.n = target.n;
        const VerificationReport id_report =
            check_implements(empty, gate_set, target, opts.phase_multiples);
        if (id_report.pass) {
            result.outcome.kind = OutcomeKind::Sat;
            result.outcome.circuit = empty;
            result.outcome.phase_multiple = id_report.phase_multiple;
            result.minimal_d = 0;
            result.optimal = true;
            return result;
        }
    }

    std::mutex mu;
    std::map<int, DepthRun> runs;
    std::atomic<int> best_sat{std::numeric_limits<int>::max()};
    std::atomic<bool> hard_stop{false};
    std::atomic<int> next_depth{opts.d_min};

    auto worker = [&]() {
        for (;;) {
            const int d = next_depth.fetch_add(1);
            if (d > opts.d_max || hard_stop.load() || d >= best_sat.load()) return;
            auto cancel = [&, d]() { return best_sat.load() < d || hard_stop.load(); };
            DepthRun run;
            try {
                run = solve_depth(target, gate_set, opts, d, opts.type_bounds,
                                  opts.instance_prefix + "_d" + std::to_string(d), cancel);
            } catch (...) {
                hard_stop.store(true);
                throw;
            }
            if (run.record.verdict == OutcomeKind::Sat) {
                int expected = best_sat.load();
                while (d < expected && !best_sat.compare_exchange_weak(expected, d)) {
                }
            } else if (!run.cancelled && (run.record.verdict == OutcomeKind::Timeout ||
                                          run.record.verdict == OutcomeKind::SolverError)) {
                hard_stop.store(true);
            }
            log_depth(opts.log, mu, run.record);
            std::lock_guard<std::mutex> lock(mu);
            runs.emplace(d, std::move(run));
        }
    };

    const int workers = std::max(1, std::min(opts.parallel, opts.d_max - opts.d_min + 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    const int sat_d = best_sat.load();
    bool gaps_below = false;
    for (auto& [d, run] : runs) {
        if (run.cancelled && d > sat_d) continue;  // superseded by a smaller SAT
        result.record.push_back(run.record);
        if (d < sat_d && run.record.verdict != OutcomeKind::Unsat &&
            run.record.verdict != OutcomeKind::Infeasible)
            gaps_below = true;
    }

    if (sat_d != std::numeric_limits<int>::max()) {
        auto& run = runs.at(sat_d);
        result.outcome.kind = OutcomeKind::Sat;
        result.outcome.circuit = run.witness->first;
        result.outcome.phase_multiple = run.witness->second;
        result.minimal_d = sat_d;
        // Optimal only when every smaller count down to d_min is covered.
        bool covered = !gaps_below;
        for (int d = opts.d_min; d < sat_d; ++d)
            if (!runs.count(d)) covered = false;
        result.optimal = covered;
        return result;
    }

    // No SAT found: classify.
    for (const DepthRecord& r : result.record) {
        if (r.verdict == OutcomeKind::Timeout || r.verdict == OutcomeKind::SolverError) {
            result.outcome.kind = r.verdict;
            result.outcome.detail = "at d=" + std::to_string(r.depth) +
                                    (r.detail.empty() ? "" : ": " + r.detail);
            return result;
        }
    }
    const bool all_infeasible =
        std::all_of(result.record.begin(), result.record.end(), [](const DepthRecord& r) {
            return r.verdict == OutcomeKind::Infeasible;
        });
    result.outcome.kind = all_infeasible ? OutcomeKind::Infeasible : OutcomeKind::Unsat;
    result.outcome.detail = all_infeasible
                                ? "no gate count in range admits ring coefficients"
                                : "no circuit with up to " + std::to_string(opts.d_max) +
                                      " gates implements the target";
    return result;
}

TypeMinResult minimize_type_count(const TargetSpec& target, const GateSet& gate_set,
                                  const SearchOptions& opts,
                                  const std::vector<int>& type_indices,
                                  std::optional<int> fixed_depth) {
    if (type_indices.empty())
        throw std::invalid_argument("minimize_type_count: empty type subset");
    TypeMinResult result;

    SearchOptions base = opts;
    if (fixed_depth) {
        base.d_min = *fixed_depth;
        base.d_max = *fixed_depth;
    }

    const auto count_type = [&](const Circuit& c) {
        int n = 0;
        for (int j : c.steps)
            if (std::find(type_indices.begin(), type_indices.end(), j) != type_indices.end()) ++n;
        return n;
    };

    SearchResult first = find_min_circuit(target, gate_set, base);
    result.record = first.record;
    if (first.outcome.kind != OutcomeKind::Sat) {
        result.outcome = first.outcome;
        return result;
    }
    Circuit witness = first.outcome.circuit;
    int witness_phase = first.outcome.phase_multiple;
    int witness_d = first.minimal_d;
    int best_count = count_type(witness);
    bool proven = first.optimal;  // d-range coverage for the existence claim

    int k = best_count - 1;
    while (k >= 0) {
        bool found_at_k = false;
        std::mutex mu;
        for (int d = base.d_min; d <= base.d_max && !found_at_k; ++d) {
            if (d == 0) continue;
            std::vector<TypeBound> bounds = opts.type_bounds;
            bounds.push_back(TypeBound{type_indices, k});
            DepthRun run = solve_depth(target, gate_set, base, d, bounds,
                                       base.instance_prefix + "_d" + std::to_string(d) + "_k" +
                                           std::to_string(k),
                                       {});
            log_depth(base.log, mu, run.record);
            result.record.push_back(run.record);
            switch (run.record.verdict) {
                case OutcomeKind::Sat:
                    witness = run.witness->first;
                    witness_phase = run.witness->second;
                    witness_d = d;
                    best_count = count_type(witness);
                    found_at_k = true;
                    break;
                case OutcomeKind::Unsat:
                case OutcomeKind::Infeasible:
                    break;
                default:
                    result.outcome.kind = run.record.verdict;
                    result.outcome.detail = "aborted while testing bound k=" + std::to_string(k);
                    result.minimal_count = best_count;
                    result.witness_depth = witness_d;
                    result.optimal = false;
                    return result;
            }
        }
        if (!found_at_k) break;
        k = best_count - 1;
    }

    result.outcome.kind = OutcomeKind::Sat;
    result.outcome.circuit = witness;
    result.outcome.phase_multiple = witness_phase;
    result.minimal_count = best_count;
    result.witness_depth = witness_d;
    result.optimal = proven;
    return result;
}

}  // namespace gatesynth
