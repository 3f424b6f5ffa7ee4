// gatesynth command line: exact synthesis of circuits from discrete gate
// sets via an external SAT solver, with provable minimality.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gatesynth/encode.hpp"
#include "gatesynth/gates.hpp"
#include "gatesynth/reversible.hpp"
#include "gatesynth/search.hpp"
#include "gatesynth/solve.hpp"
#include "gatesynth/target_io.hpp"
#include "gatesynth/verify.hpp"

namespace {

using namespace gatesynth;

constexpr int kExitFound = 0;
constexpr int kExitAbsent = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSolverError = 3;
constexpr int kExitUsage = 64;

std::vector<GateName> parse_gate_list(const std::string& list) {
    std::vector<GateName> out;
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        const auto name = parse_gate_name(tok);
        if (!name) throw CLI::ValidationError("--gates", "unknown gate name \"" + tok + "\"");
        out.push_back(*name);
    }
    if (out.empty()) throw CLI::ValidationError("--gates", "empty gate list");
    return out;
}

std::optional<Connectivity> parse_connectivity(const std::string& list) {
    if (list.empty()) return std::nullopt;
    Connectivity conn;
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        std::vector<int> tuple;
        std::istringstream ts(tok);
        std::string q;
        while (std::getline(ts, q, ':')) tuple.push_back(std::atoi(q.c_str()));
        conn.allowed.push_back(std::move(tuple));
    }
    return conn;
}

std::vector<TypeBound> parse_max_counts(const std::vector<std::string>& specs,
                                        const GateSet& gs) {
    std::vector<TypeBound> bounds;
    for (const std::string& s : specs) {
        const auto colon = s.rfind(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--max-count", "expected <gates>:<k>");
        const std::vector<GateName> prims = parse_gate_list(s.substr(0, colon));
        TypeBound tb;
        tb.gate_indices = gs.indices_of(prims);
        tb.max_count = std::atoi(s.c_str() + colon + 1);
        if (tb.gate_indices.empty())
            throw CLI::ValidationError("--max-count", "no gates of that type in the set");
        bounds.push_back(std::move(tb));
    }
    return bounds;
}

std::string default_solver_path() {
    char buf[4096];
    const ssize_t len = readlink("/proc/self/exe", buf, sizeof(buf) - 1);
    if (len > 0) {
        buf[len] = '\0';
        const std::filesystem::path sibling =
            std::filesystem::path(buf).parent_path() / "gatesynth-sat";
        if (std::filesystem::exists(sibling)) return sibling.string();
    }
    return "gatesynth-sat";  // PATH lookup
}

struct CommonOpts {
    std::string target_file;
    std::string builtin;
    std::string gates = "H,T,Tdg,CNOT";
    std::string connectivity;
    int min_d = 1;
    int max_d = 10;
    bool up_to_phase = false;
    int clean_ancilla = 0;
    int dirty_ancilla = 0;
    std::vector<std::string> max_counts;
    std::string solver;
    double timeout = 0.0;
    bool tight_widths = false;
    std::string artifacts = "gatesynth-artifacts";
    std::string emit = "text";
    int parallel = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_target = true) {
    if (with_target) {
        cmd->add_option("--target", o.target_file, "target file (JSON)");
        cmd->add_option("--builtin", o.builtin,
                        "builtin target: toffoli|and|swap|fredkin|cz|ghz:N");
    }
    cmd->add_option("--gates", o.gates, "comma-separated gate primitives");
    cmd->add_option("--connectivity", o.connectivity,
                    "allowed operand tuples, e.g. 0:1,1:0,0:1:2");
    cmd->add_option("--min-d", o.min_d, "smallest gate count to try");
    cmd->add_option("--max-d", o.max_d, "largest gate count to try");
    cmd->add_flag("--up-to-phase", o.up_to_phase, "match up to a global phase e^{ik pi/4}");
    cmd->add_option("--clean-ancilla", o.clean_ancilla, "append N |0> ancilla qubits");
    cmd->add_option("--dirty-ancilla", o.dirty_ancilla, "append N dirty ancilla qubits");
    cmd->add_option("--max-count", o.max_counts,
                    "cardinality bound <gates>:<k>, repeatable");
    cmd->add_option("--solver", o.solver, "SAT solver executable (DIMACS, exit 10/20)");
    cmd->add_option("--timeout", o.timeout, "per-instance solver timeout in seconds");
    cmd->add_flag("--tight-widths", o.tight_widths,
                  "use the experimental d+2 bit widths instead of the proven bound");
    cmd->add_option("--artifacts", o.artifacts, "directory for DIMACS files and solver logs");
    cmd->add_option("--emit", o.emit, "output format: text|json");
    cmd->add_option("--parallel", o.parallel, "solve this many gate counts concurrently");
}

SearchOptions make_search_options(const CommonOpts& o) {
    SearchOptions opts;
    opts.d_min = o.min_d;
    opts.d_max = o.max_d;
    if (o.up_to_phase) opts.phase_multiples = {0, 1, 2, 3, 4, 5, 6, 7};
    opts.width_policy = o.tight_widths ? WidthPolicy::Tight : WidthPolicy::Theorem1;
    opts.solver = SolverConfig::validated(
        o.solver.empty() ? default_solver_path() : o.solver, {},
        o.timeout > 0 ? std::optional<double>(o.timeout) : std::nullopt);
    opts.artifact_dir = o.artifacts;
    opts.parallel = o.parallel;
    opts.log = &std::cerr;
    return opts;
}

TargetSpec load_spec_target(const CommonOpts& o) {
    if (o.target_file.empty() == o.builtin.empty())
        throw CLI::ValidationError("--target", "give exactly one of --target or --builtin");
    LoadedTarget loaded =
        o.builtin.empty() ? load_target_file(o.target_file) : builtin_target(o.builtin);
    if (!loaded.spec)
        throw FileFormatError("this target is a truth table; use synth-reversible");
    TargetSpec t = *loaded.spec;
    if (o.dirty_ancilla > 0) t = t.with_dirty_ancillas(o.dirty_ancilla);
    if (o.clean_ancilla > 0) t = t.with_clean_ancillas(o.clean_ancilla);
    return t;
}

int report_search(const SearchResult& result, const GateSet& gs, const CommonOpts& o) {
    const SynthesisOutcome& out = result.outcome;
    switch (out.kind) {
        case OutcomeKind::Sat: {
            if (o.emit == "json") {
                std::cout << emit_circuit_json(out.circuit, gs, out.phase_multiple, result);
            } else {
                std::cout << "# result: found\n";
                std::cout << "# d: " << result.minimal_d
                          << (result.optimal ? " (optimal" : " (not proven optimal");
                const auto below = result.unsat_depths();
                if (!below.empty()) {
                    std::cout << "; unsat below:";
                    for (int d : below)
                        if (d < result.minimal_d) std::cout << " " << d;
                }
                std::cout << ")\n";
                if (out.phase_multiple != 0)
                    std::cout << "# phase_multiple: " << out.phase_multiple << "\n";
                std::cout << emit_circuit_text(out.circuit, gs);
            }
            return kExitFound;
        }
        case OutcomeKind::Unsat:
            if (o.emit == "json") {
                std::cout << "{ \"result\": \"unsat\", \"max_d\": " << o.max_d << " }\n";
            } else {
                std::cout << "# result: no circuit with up to " << o.max_d << " gates\n";
            }
            return kExitAbsent;
        case OutcomeKind::Infeasible:
            if (o.emit == "json") {
                std::cout << "{ \"result\": \"infeasible\" }\n";
            } else {
                std::cout << "# result: infeasible (" << out.detail << ")\n";
            }
            return kExitInfeasible;
        default:
            std::cerr << "error: " << outcome_kind_str(out.kind) << " " << out.detail << "\n";
            return kExitSolverError;
    }
}

int cmd_synth(const CommonOpts& o, bool states) {
    const TargetSpec target = load_spec_target(o);
    if (states && target.kind != TargetSpec::Kind::States)
        throw FileFormatError("synth-states needs a state-mapping target");
    if (!states && target.kind != TargetSpec::Kind::Matrix)
        throw FileFormatError("synth needs a matrix target (use synth-states)");
    const GateSet gs =
        build_gate_set(target.n, parse_gate_list(o.gates), parse_connectivity(o.connectivity));
    SearchOptions opts = make_search_options(o);
    opts.type_bounds = parse_max_counts(o.max_counts, gs);
    const SearchResult result = find_min_circuit(target, gs, opts);
    return report_search(result, gs, o);
}

int cmd_synth_reversible(const CommonOpts& o, const std::string& table_file) {
    TruthTableSpec spec;
    if (!table_file.empty()) {
        std::ifstream is(table_file);
        if (!is) throw FileFormatError("cannot open table file: " + table_file);
        spec = TruthTableSpec::parse(is);
    } else if (!o.target_file.empty()) {
        LoadedTarget loaded = load_target_file(o.target_file);
        if (!loaded.table)
            throw FileFormatError("synth-reversible needs a truth-table target");
        spec = *loaded.table;
    } else {
        throw CLI::ValidationError("--table", "give --table or a truthtable --target");
    }
    if (const auto warning = spec.reversibility_warning())
        std::cerr << "warning: " << *warning << "\n";

    std::vector<GateName> prims = parse_gate_list(o.gates);
    const ReversibleGateSet gs =
        build_reversible_gate_set(spec.n, prims, parse_connectivity(o.connectivity));
    SearchOptions opts = make_search_options(o);
    const SearchResult result = synth_reversible_min(spec, gs, opts);

    if (result.outcome.kind == OutcomeKind::Sat) {
        if (o.emit == "json") {
            std::cout << emit_circuit_json(result.outcome.circuit.steps, gs, result);
        } else {
            std::cout << "# result: found\n";
            std::cout << "# d: " << result.minimal_d << (result.optimal ? " (optimal)" : "")
                      << "\n";
            std::cout << emit_circuit_text(result.outcome.circuit.steps, gs);
        }
        return kExitFound;
    }
    if (result.outcome.kind == OutcomeKind::Unsat) {
        std::cout << (o.emit == "json" ? "{ \"result\": \"unsat\" }\n"
                                       : "# result: no circuit within the gate-count range\n");
        return kExitAbsent;
    }
    std::cerr << "error: " << outcome_kind_str(result.outcome.kind) << " "
              << result.outcome.detail << "\n";
    return kExitSolverError;
}

int cmd_verify(const CommonOpts& o, const std::string& circuit_file,
               const std::string& table_file) {
    if (!table_file.empty()) {
        std::ifstream is(table_file);
        if (!is) throw FileFormatError("cannot open table file: " + table_file);
        const TruthTableSpec spec = TruthTableSpec::parse(is);
        const NamedCircuit nc = load_circuit_file(circuit_file, spec.n);
        ReversibleGateSet gs;
        std::vector<int> steps;
        for (const auto& [name, operands] : nc.gates) {
            gs.push_back(ReversibleGate{name, operands});
            steps.push_back(static_cast<int>(gs.size()) - 1);
        }
        const bool pass = reversible_implements(steps, gs, spec);
        std::cout << (pass ? "verified: pass\n" : "verified: FAIL\n");
        return pass ? kExitFound : kExitAbsent;
    }

    const TargetSpec target = load_spec_target(o);
    const NamedCircuit nc = load_circuit_file(circuit_file, target.n);
    GateSet gs;
    gs.n = target.n;
    Circuit circuit;
    circuit.n = target.n;
    for (const auto& [name, operands] : nc.gates) {
        gs.gates.push_back(make_gate(name, operands, target.n));
        circuit.steps.push_back(static_cast<int>(gs.gates.size()) - 1);
    }
    std::vector<int> phases = {0};
    if (o.up_to_phase) phases = {0, 1, 2, 3, 4, 5, 6, 7};
    const VerificationReport report = check_implements(circuit, gs, target, phases);
    std::cout << "verified: " << report.describe() << "\n";
    return report.pass ? kExitFound : kExitAbsent;
}

int cmd_encode(const CommonOpts& o) {
    const TargetSpec target = load_spec_target(o);
    const GateSet gs =
        build_gate_set(target.n, parse_gate_list(o.gates), parse_connectivity(o.connectivity));
    std::filesystem::create_directories(o.artifacts);
    int encoded = 0;
    for (int d = o.min_d; d <= o.max_d; ++d) {
        SynthesisProblem p;
        p.target = target;
        p.gate_set = &gs;
        p.depth = d;
        if (o.up_to_phase) p.phase_multiples = {0, 1, 2, 3, 4, 5, 6, 7};
        p.type_bounds = parse_max_counts(o.max_counts, gs);
        p.width_policy = o.tight_widths ? WidthPolicy::Tight : WidthPolicy::Theorem1;
        EncodeOutcome enc = encode_instance(p);
        if (std::holds_alternative<Infeasibility>(enc)) {
            std::cout << "d=" << d << " infeasible: " << std::get<Infeasibility>(enc).reason
                      << "\n";
            continue;
        }
        EncodedInstance& inst = std::get<EncodedInstance>(enc);
        const std::string path =
            (std::filesystem::path(o.artifacts) / ("instance_d" + std::to_string(d) + ".cnf"))
                .string();
        inst.formula.write_dimacs_file(path);
        std::cout << "d=" << d << " vars=" << inst.stats.variables
                  << " clauses=" << inst.stats.clauses << " file=" << path << "\n";
        ++encoded;
    }
    return encoded > 0 ? kExitFound : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact gate synthesis via SAT with optimality certificates"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string table_file, circuit_file;

    CLI::App* synth = app.add_subcommand("synth", "synthesize a unitary matrix target");
    add_common(synth, o);
    CLI::App* synth_states =
        app.add_subcommand("synth-states", "synthesize from specified state mappings");
    add_common(synth_states, o);
    CLI::App* synth_rev =
        app.add_subcommand("synth-reversible", "synthesize a classical reversible circuit");
    add_common(synth_rev, o);
    synth_rev->add_option("--table", table_file, "truth-table file (text format)");
    synth_rev->get_option("--gates")->default_str("X,CNOT,TOFFOLI");

    CLI::App* verify = app.add_subcommand("verify", "check a circuit file against a target");
    add_common(verify, o);
    verify->add_option("--circuit", circuit_file, "circuit file (text or JSON)")->required();
    verify->add_option("--table", table_file, "truth-table target for reversible circuits");

    CLI::App* encode = app.add_subcommand("encode", "emit DIMACS instances without solving");
    add_common(encode, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (synth->parsed()) return cmd_synth(o, false);
        if (synth_states->parsed()) return cmd_synth(o, true);
        if (synth_rev->parsed()) {
            if (o.gates == "H,T,Tdg,CNOT") o.gates = "X,CNOT,TOFFOLI";
            return cmd_synth_reversible(o, table_file);
        }
        if (verify->parsed()) return cmd_verify(o, circuit_file, table_file);
        if (encode->parsed()) return cmd_encode(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FileFormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverError;
    }
    return kExitUsage;
}
