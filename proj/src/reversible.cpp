#include "gatesynth/reversible.hpp"

#include <algorithm>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace gatesynth {

TruthTableSpec TruthTableSpec::parse(std::istream& is) {
    TruthTableSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string in, arrow, out;
        if (!(ls >> in)) continue;  // blank
        if (!(ls >> arrow >> out) || arrow != "->")
            throw std::runtime_error("truth table line " + std::to_string(lineno) +
                                     ": expected '<bits> -> <bits>'");
        if (spec.n == 0) {
            spec.n = static_cast<int>(in.size());
            if (spec.n < 1 || spec.n > 24)
                throw std::runtime_error("truth table: unsupported wire count");
        }
        if (in.size() != static_cast<std::size_t>(spec.n) || out.size() != in.size())
            throw std::runtime_error("truth table line " + std::to_string(lineno) +
                                     ": width mismatch");
        TruthTableRow row;
        for (int q = 0; q < spec.n; ++q) {
            const char ci = in[static_cast<std::size_t>(q)];
            if (ci == '1')
                row.input |= (1u << q);
            else if (ci != '0')
                throw std::runtime_error("truth table line " + std::to_string(lineno) +
                                         ": input bits must be 0 or 1");
            const char co = out[static_cast<std::size_t>(q)];
            if (co == '1') {
                row.output |= (1u << q);
                row.care_mask |= (1u << q);
            } else if (co == '0') {
                row.care_mask |= (1u << q);
            } else if (co != '-') {
                throw std::runtime_error("truth table line " + std::to_string(lineno) +
                                         ": output bits must be 0, 1 or -");
            }
        }
        spec.rows.push_back(row);
    }
    if (spec.rows.empty()) throw std::runtime_error("truth table: no rows");
    spec.check_consistent();
    return spec;
}

std::string TruthTableSpec::serialize() const {
    std::ostringstream os;
    for (const TruthTableRow& r : rows) {
        for (int q = 0; q < n; ++q) os << (((r.input >> q) & 1u) ? '1' : '0');
        os << " -> ";
        for (int q = 0; q < n; ++q) {
            if (!((r.care_mask >> q) & 1u))
                os << '-';
            else
                os << (((r.output >> q) & 1u) ? '1' : '0');
        }
        os << "\n";
    }
    return os.str();
}

void TruthTableSpec::check_consistent() const {
    std::map<std::uint32_t, const TruthTableRow*> seen;
    for (const TruthTableRow& r : rows) {
        auto [it, inserted] = seen.emplace(r.input, &r);
        if (!inserted) {
            const TruthTableRow& prev = *it->second;
            const std::uint32_t both = prev.care_mask & r.care_mask;
            if ((prev.output & both) != (r.output & both))
                throw std::invalid_argument("truth table: same input mapped to two outputs");
        }
    }
}

std::optional<std::string> TruthTableSpec::reversibility_warning() const {
    std::map<std::uint32_t, std::uint32_t> image;
    const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
    for (const TruthTableRow& r : rows) {
        if (r.care_mask != full) return std::nullopt;  // partial: nothing to check
        auto [it, inserted] = image.emplace(r.output, r.input);
        if (!inserted && it->second != r.input)
            return "specified outputs collide (map is not injective); no reversible "
                   "circuit can realize the full table";
    }
    return std::nullopt;
}

std::string ReversibleGate::display() const {
    std::ostringstream os;
    os << gate_name_str(kind) << " ";
    for (std::size_t i = 0; i < operands.size(); ++i) {
        if (i) os << ",";
        os << "w" << operands[i];
    }
    return os.str();
}

ReversibleGateSet build_reversible_gate_set(int n, const std::vector<GateName>& prims,
                                            const std::optional<Connectivity>& connectivity) {
    if (n < 1) throw std::invalid_argument("build_reversible_gate_set: n must be >= 1");
    ReversibleGateSet gs;
    for (GateName name : prims) {
        int arity;
        switch (name) {
            case GateName::X: arity = 1; break;
            case GateName::CNOT: arity = 2; break;
            case GateName::TOFFOLI: arity = 3; break;
            default:
                throw std::invalid_argument(
                    std::string("reversible gate set supports X, CNOT, TOFFOLI; got ") +
                    gate_name_str(name));
        }
        if (arity > n) continue;
        // Operand order is (controls..., target); controls are interchangeable.
        std::vector<int> ops(static_cast<std::size_t>(arity));
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == arity) {
                std::vector<int> controls(ops.begin(), ops.end() - 1);
                if (!std::is_sorted(controls.begin(), controls.end())) return;
                if (connectivity && !connectivity->permits(ops)) return;
                gs.push_back(ReversibleGate{name, ops});
                return;
            }
            for (int q = 0; q < n; ++q) {
                if (std::find(ops.begin(), ops.begin() + pos, q) != ops.begin() + pos) continue;
                ops[static_cast<std::size_t>(pos)] = q;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }
    if (gs.empty()) throw std::invalid_argument("build_reversible_gate_set: empty gate set");
    return gs;
}

std::uint32_t apply_reversible(const ReversibleGate& g, std::uint32_t state) {
    switch (g.kind) {
        case GateName::X:
            return state ^ (1u << g.operands[0]);
        case GateName::CNOT:
            return ((state >> g.operands[0]) & 1u) ? state ^ (1u << g.operands[1]) : state;
        case GateName::TOFFOLI:
            return (((state >> g.operands[0]) & 1u) && ((state >> g.operands[1]) & 1u))
                       ? state ^ (1u << g.operands[2])
                       : state;
        default:
            throw std::logic_error("apply_reversible: bad gate kind");
    }
}

std::uint32_t simulate_reversible(const std::vector<int>& steps, const ReversibleGateSet& gs,
                                  std::uint32_t input) {
    std::uint32_t state = input;
    for (int j : steps) state = apply_reversible(gs.at(static_cast<std::size_t>(j)), state);
    return state;
}

ReversibleInstance encode_reversible(const TruthTableSpec& spec, const ReversibleGateSet& gs,
                                     int depth) {
    if (depth < 1) throw std::invalid_argument("encode_reversible: depth must be >= 1");
    if (spec.rows.empty()) throw std::invalid_argument("encode_reversible: no specified rows");
    spec.check_consistent();
    const int n = spec.n;
    const int g = static_cast<int>(gs.size());
    const int rows = static_cast<int>(spec.rows.size());

    ReversibleInstance inst;
    CnfFormula& f = inst.formula;
    ReversibleVarMap& vm = inst.vars;
    vm.d = depth;
    vm.g = g;
    vm.n = n;

    vm.selector.assign(static_cast<std::size_t>(depth), std::vector<int>());
    for (int i = 0; i < depth; ++i) {
        std::vector<Lit> lits;
        for (int j = 0; j < g; ++j) {
            const int v = f.new_var();
            vm.selector[static_cast<std::size_t>(i)].push_back(v);
            lits.push_back(Lit::pos(v));
        }
        exactly_one(f, lits);
    }

    vm.wire.assign(static_cast<std::size_t>(rows), {});
    for (int t = 0; t < rows; ++t) {
        auto& layers = vm.wire[static_cast<std::size_t>(t)];
        layers.assign(static_cast<std::size_t>(depth) + 1, std::vector<int>());
        for (int i = 0; i <= depth; ++i)
            for (int q = 0; q < n; ++q)
                layers[static_cast<std::size_t>(i)].push_back(f.new_var());
    }

    // Boundary layers: inputs exactly, outputs where specified.
    for (int t = 0; t < rows; ++t) {
        const TruthTableRow& row = spec.rows[static_cast<std::size_t>(t)];
        for (int q = 0; q < n; ++q) {
            const Lit in = Lit::pos(vm.wire_var(t, 0, q));
            f.add_clause({((row.input >> q) & 1u) ? in : ~in});
            if ((row.care_mask >> q) & 1u) {
                const Lit out = Lit::pos(vm.wire_var(t, depth, q));
                f.add_clause({((row.output >> q) & 1u) ? out : ~out});
            }
        }
    }

    // Transitions, relaxed by the selector literal.
    for (int i = 0; i < depth; ++i) {
        for (int j = 0; j < g; ++j) {
            const ReversibleGate& gate = gs[static_cast<std::size_t>(j)];
            const Lit x = Lit::pos(vm.selector_var(i, j));
            const int target = gate.operands.back();
            for (int t = 0; t < rows; ++t) {
                auto bit = [&](int layer, int q) { return Lit::pos(vm.wire_var(t, layer, q)); };
                for (int q = 0; q < n; ++q) {
                    if (q == target) continue;
                    const Lit a = bit(i, q), b = bit(i + 1, q);
                    f.add_clause({~x, a, ~b});
                    f.add_clause({~x, ~a, b});
                }
                const Lit b0 = bit(i, target), b1 = bit(i + 1, target);
                if (gate.kind == GateName::X) {
                    f.add_clause({~x, b1, b0});
                    f.add_clause({~x, ~b1, ~b0});
                } else if (gate.kind == GateName::CNOT) {
                    const Lit c = bit(i, gate.operands[0]);
                    f.add_clause({~x, ~b1, c, b0});
                    f.add_clause({~x, ~b1, ~c, ~b0});
                    f.add_clause({~x, b1, ~c, b0});
                    f.add_clause({~x, b1, c, ~b0});
                } else {
                    // Toffoli: one conjunction variable per (row, step, gate).
                    const Lit c1 = bit(i, gate.operands[0]);
                    const Lit c2 = bit(i, gate.operands[1]);
                    const Lit both = f.new_lit();
                    f.add_clause({~both, c1});
                    f.add_clause({~both, c2});
                    f.add_clause({both, ~c1, ~c2});
                    f.add_clause({~x, ~b1, both, b0});
                    f.add_clause({~x, ~b1, ~both, ~b0});
                    f.add_clause({~x, b1, ~both, b0});
                    f.add_clause({~x, b1, both, ~b0});
                }
            }
        }
    }
    return inst;
}

std::vector<int> decode_reversible(const Model& model, const ReversibleVarMap& vars) {
    std::vector<int> steps;
    for (int i = 0; i < vars.d; ++i) {
        int chosen = -1;
        for (int j = 0; j < vars.g; ++j)
            if (model.lit_true(Lit::pos(vars.selector_var(i, j)))) {
                if (chosen >= 0)
                    throw std::logic_error("decode_reversible: multiple gates at step " +
                                           std::to_string(i));
                chosen = j;
            }
        if (chosen < 0)
            throw std::logic_error("decode_reversible: no gate at step " + std::to_string(i));
        steps.push_back(chosen);
    }
    return steps;
}

bool reversible_implements(const std::vector<int>& steps, const ReversibleGateSet& gs,
                           const TruthTableSpec& spec) {
    for (const TruthTableRow& row : spec.rows) {
        const std::uint32_t got = simulate_reversible(steps, gs, row.input);
        if ((got & row.care_mask) != (row.output & row.care_mask)) return false;
    }
    return true;
}

SearchResult synth_reversible_min(const TruthTableSpec& spec, const ReversibleGateSet& gs,
                                  const SearchOptions& opts) {
    if (opts.d_max < 1 || opts.d_max < opts.d_min)
        throw std::invalid_argument("synth_reversible_min: bad depth range");
    SearchResult result;

    if (opts.d_min <= 1 && reversible_implements({}, gs, spec)) {
        result.outcome.kind = OutcomeKind::Sat;
        result.outcome.circuit.n = spec.n;
        result.minimal_d = 0;
        result.optimal = true;
        return result;
    }

    std::mutex log_mu;
    for (int d = opts.d_min; d <= opts.d_max; ++d) {
        ReversibleInstance inst = encode_reversible(spec, gs, d);
        DepthRecord rec;
        rec.depth = d;
        rec.stats.variables = inst.formula.var_count();
        rec.stats.clauses = inst.formula.clause_count();

        const std::filesystem::path dir(opts.artifact_dir.empty() ? "." : opts.artifact_dir);
        std::filesystem::create_directories(dir);
        const std::string name = opts.instance_prefix + "_d" + std::to_string(d);
        const std::string cnf_path = (dir / (name + ".cnf")).string();
        const std::string out_path = (dir / (name + ".out")).string();
        inst.formula.write_dimacs_file(cnf_path);

        const RawSolve raw = run_solver(opts.solver, cnf_path, out_path);
        rec.solve_seconds = raw.wall_seconds;
        switch (raw.verdict) {
            case RawVerdict::Unsat:
                rec.verdict = OutcomeKind::Unsat;
                break;
            case RawVerdict::Sat: {
                const std::vector<int> steps = decode_reversible(raw.model, inst.vars);
                if (!reversible_implements(steps, gs, spec))
                    throw std::logic_error(
                        "synth_reversible_min: model fails truth-table simulation");
                rec.verdict = OutcomeKind::Sat;
                break;
            }
            case RawVerdict::Timeout:
                rec.verdict = OutcomeKind::Timeout;
                rec.detail = raw.detail;
                break;
            case RawVerdict::Error:
                rec.verdict = OutcomeKind::SolverError;
                rec.detail = raw.detail;
                break;
        }
        if (opts.log) {
            std::lock_guard<std::mutex> lock(log_mu);
            (*opts.log) << "[search] d=" << rec.depth << " vars=" << rec.stats.variables
                        << " clauses=" << rec.stats.clauses
                        << " verdict=" << outcome_kind_str(rec.verdict)
                        << " t=" << rec.solve_seconds << "s\n";
        }
        result.record.push_back(rec);

        if (rec.verdict == OutcomeKind::Sat) {
            const std::vector<int> steps = decode_reversible(raw.model, inst.vars);
            result.outcome.kind = OutcomeKind::Sat;
            result.outcome.circuit.n = spec.n;
            result.outcome.circuit.steps = steps;
            result.minimal_d = d;
            result.optimal = true;
            for (const DepthRecord& r : result.record)
                if (r.depth < d && r.verdict != OutcomeKind::Unsat) result.optimal = false;
            return result;
        }
        if (rec.verdict == OutcomeKind::Timeout || rec.verdict == OutcomeKind::SolverError) {
            result.outcome.kind = rec.verdict;
            result.outcome.detail = "at d=" + std::to_string(d) +
                                    (rec.detail.empty() ? "" : ": " + rec.detail);
            return result;
        }
    }
    result.outcome.kind = OutcomeKind::Unsat;
    result.outcome.detail =
        "no circuit with up to " + std::to_string(opts.d_max) + " gates realizes the table";
    return result;
}

}  // namespace gatesynth
