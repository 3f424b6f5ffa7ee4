#include "gatesynth/target_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gatesynth {

using nlohmann::json;

namespace {

Int read_entry_int(const json& v, const std::string& where) {
    if (!v.is_number_integer())
        throw FileFormatError("target file: " + where +
                              " must be an integer (the ring has no other coefficients)");
    return v.get<Int>();
}

ScaledMatrix parse_scaled_grid(const json& j, int rows, int cols, const std::string& where) {
    int scale = 0;
    if (j.contains("scale")) {
        if (!j["scale"].is_number_integer() || j["scale"].get<long>() < 0)
            throw FileFormatError("target file: " + where + ".scale must be a non-negative integer");
        scale = j["scale"].get<int>();
    }
    if (!j.contains("entries") || !j["entries"].is_array())
        throw FileFormatError("target file: " + where + ".entries must be an array");
    const json& grid = j["entries"];
    ScaledMatrix m(rows, cols, scale);
    if (static_cast<int>(grid.size()) != rows)
        throw FileFormatError("target file: " + where + " has " + std::to_string(grid.size()) +
                              " rows, expected " + std::to_string(rows));
    for (int r = 0; r < rows; ++r) {
        const json& row = grid[static_cast<std::size_t>(r)];
        const std::string rw = where + " row " + std::to_string(r);
        if (cols == 1 && row.is_array() && row.size() == 4 && !row[0].is_array()) {
            // Vectors may flatten the single column.
            m.at(r, 0) = RingElem{read_entry_int(row[0], rw), read_entry_int(row[1], rw),
                                  read_entry_int(row[2], rw), read_entry_int(row[3], rw)};
            continue;
        }
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw FileFormatError("target file: " + rw + " has wrong length");
        for (int c = 0; c < cols; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            const std::string ew = rw + " col " + std::to_string(c);
            if (!e.is_array() || e.size() != 4)
                throw FileFormatError("target file: " + ew + " must be [a,b,c,d]");
            m.at(r, c) = RingElem{read_entry_int(e[0], ew), read_entry_int(e[1], ew),
                                  read_entry_int(e[2], ew), read_entry_int(e[3], ew)};
        }
    }
    return m;
}

int read_n(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1)
        throw FileFormatError("target file: missing or invalid qubit count \"n\"");
    const int n = j["n"].get<int>();
    if (n > 12) throw FileFormatError("target file: n > 12 is not supported");
    return n;
}

}  // namespace

LoadedTarget parse_target_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileFormatError(std::string("target file: ") + e.what());
    }
    const std::string kind = j.value("kind", "matrix");
    LoadedTarget out;
    if (kind == "matrix") {
        const int n = read_n(j);
        const int dim = 1 << n;
        TargetSpec t = TargetSpec::from_matrix(parse_scaled_grid(j, dim, dim, "matrix"));
        if (j.contains("keep_columns")) {
            std::vector<int> kept;
            for (const json& c : j["keep_columns"]) {
                if (!c.is_number_integer())
                    throw FileFormatError("target file: keep_columns entries must be integers");
                kept.push_back(c.get<int>());
            }
            t = mask_columns(t, kept);
        }
        out.spec = std::move(t);
    } else if (kind == "states") {
        const int n = read_n(j);
        const int dim = 1 << n;
        if (!j.contains("pairs") || !j["pairs"].is_array() || j["pairs"].empty())
            throw FileFormatError("target file: states kind needs a non-empty \"pairs\" array");
        std::vector<StatePair> pairs;
        int idx = 0;
        for (const json& p : j["pairs"]) {
            const std::string where = "pair " + std::to_string(idx++);
            if (!p.contains("in") || !p.contains("out"))
                throw FileFormatError("target file: " + where + " needs \"in\" and \"out\"");
            StatePair sp;
            sp.input = parse_scaled_grid(p["in"], dim, 1, where + ".in");
            sp.output = parse_scaled_grid(p["out"], dim, 1, where + ".out");
            pairs.push_back(std::move(sp));
        }
        out.spec = TargetSpec::from_states(n, std::move(pairs));
    } else if (kind == "truthtable") {
        if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
            throw FileFormatError("target file: truthtable kind needs a non-empty \"rows\" array");
        std::ostringstream table_text;
        for (const json& r : j["rows"]) {
            if (!r.contains("in") || !r.contains("out") || !r["in"].is_string() ||
                !r["out"].is_string())
                throw FileFormatError("target file: truthtable rows need \"in\"/\"out\" strings");
            table_text << r["in"].get<std::string>() << " -> " << r["out"].get<std::string>()
                       << "\n";
        }
        std::istringstream is(table_text.str());
        out.table = TruthTableSpec::parse(is);
    } else {
        throw FileFormatError("target file: unknown kind \"" + kind + "\"");
    }
    return out;
}

LoadedTarget load_target_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FileFormatError("cannot open target file: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_target_text(buf.str());
}

namespace {

json grid_to_json(const ScaledMatrix& m) {
    json grid = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            const RingElem& e = m.at(r, c);
            row.push_back(json::array({e.a, e.b, e.c, e.d}));
        }
        grid.push_back(std::move(row));
    }
    return grid;
}

}  // namespace

std::string target_to_text(const TargetSpec& t) {
    json j;
    j["n"] = t.n;
    if (t.kind == TargetSpec::Kind::Matrix) {
        j["kind"] = "matrix";
        j["scale"] = t.matrix.scale();
        j["entries"] = grid_to_json(t.matrix);
        const auto kept = t.kept_columns();
        if (static_cast<int>(kept.size()) != t.dim()) j["keep_columns"] = kept;
    } else {
        j["kind"] = "states";
        json pairs = json::array();
        for (const StatePair& p : t.pairs) {
            json jp;
            jp["in"]["scale"] = p.input.scale();
            jp["in"]["entries"] = grid_to_json(p.input);
            jp["out"]["scale"] = p.output.scale();
            jp["out"]["entries"] = grid_to_json(p.output);
            pairs.push_back(std::move(jp));
        }
        j["pairs"] = std::move(pairs);
    }
    return j.dump(2) + "\n";
}

std::string truthtable_to_text(const TruthTableSpec& t) { return t.serialize(); }

void write_target_file(const std::string& path, const TargetSpec& t) {
    std::ofstream os(path);
    if (!os) throw FileFormatError("cannot write target file: " + path);
    os << target_to_text(t);
}

LoadedTarget builtin_target(const std::string& name) {
    LoadedTarget out;
    if (name == "toffoli") {
        out.spec = TargetSpec::from_matrix(
            make_gate(GateName::TOFFOLI, {0, 1, 2}, 3).expanded.canonicalized());
    } else if (name == "and") {
        TargetSpec t = TargetSpec::from_matrix(
            make_gate(GateName::TOFFOLI, {0, 1, 2}, 3).expanded.canonicalized());
        out.spec = mask_columns_clean(t, {2});
    } else if (name == "swap") {
        const ScaledMatrix c01 = make_gate(GateName::CNOT, {0, 1}, 2).expanded;
        const ScaledMatrix c10 = make_gate(GateName::CNOT, {1, 0}, 2).expanded;
        out.spec = TargetSpec::from_matrix(
            scaled_mat_mul(c01, scaled_mat_mul(c10, c01)).canonicalized());
    } else if (name == "fredkin") {
        const ScaledMatrix t012 = make_gate(GateName::TOFFOLI, {0, 1, 2}, 3).expanded;
        const ScaledMatrix c21 = make_gate(GateName::CNOT, {2, 1}, 3).expanded;
        out.spec = TargetSpec::from_matrix(
            scaled_mat_mul(c21, scaled_mat_mul(t012, c21)).canonicalized());
    } else if (name == "cz") {
        out.spec =
            TargetSpec::from_matrix(make_gate(GateName::CZ, {0, 1}, 2).expanded.canonicalized());
    } else if (name.rfind("ghz:", 0) == 0) {
        const int n = std::atoi(name.c_str() + 4);
        if (n < 2 || n > 12) throw FileFormatError("builtin ghz:N needs 2 <= N <= 12");
        const int dim = 1 << n;
        StatePair p;
        p.input = ScaledMatrix(dim, 1, 0);
        p.input.at(0, 0) = RingElem::one();
        p.output = ScaledMatrix(dim, 1, 1);
        p.output.at(0, 0) = {0, 0, 1, 0};
        p.output.at(dim - 1, 0) = {0, 0, 1, 0};
        out.spec = TargetSpec::from_states(n, {std::move(p)});
    } else {
        throw FileFormatError("unknown builtin target \"" + name +
                              "\" (known: toffoli, and, swap, fredkin, cz, ghz:N)");
    }
    return out;
}

std::string emit_circuit_text(const Circuit& circuit, const GateSet& gs) {
    std::ostringstream os;
    for (int j : circuit.steps) {
        const Gate& g = gs[j];
        os << gate_name_str(g.name) << " ";
        for (std::size_t i = 0; i < g.operands.size(); ++i)
            os << (i ? "," : "") << "q" << g.operands[i];
        os << "\n";
    }
    return os.str();
}

std::string emit_circuit_text(const std::vector<int>& steps, const ReversibleGateSet& gs) {
    std::ostringstream os;
    for (int j : steps) {
        const ReversibleGate& g = gs.at(static_cast<std::size_t>(j));
        os << gate_name_str(g.kind) << " ";
        for (std::size_t i = 0; i < g.operands.size(); ++i)
            os << (i ? "," : "") << "q" << g.operands[i];
        os << "\n";
    }
    return os.str();
}

namespace {

json search_evidence(const SearchResult& result) {
    json j;
    j["unsat_below"] = result.unsat_depths();
    j["optimal"] = result.optimal;
    json rec = json::array();
    for (const DepthRecord& r : result.record) {
        json e;
        e["d"] = r.depth;
        e["verdict"] = outcome_kind_str(r.verdict);
        e["by_precheck"] = r.by_precheck;
        e["seconds"] = r.solve_seconds;
        e["vars"] = r.stats.variables;
        e["clauses"] = r.stats.clauses;
        rec.push_back(std::move(e));
    }
    j["record"] = std::move(rec);
    return j;
}

}  // namespace

std::string emit_circuit_json(const Circuit& circuit, const GateSet& gs, int phase_multiple,
                              const SearchResult& result) {
    json j;
    j["kind"] = "unitary";
    j["n"] = circuit.n;
    j["d"] = circuit.depth();
    j["phase_multiple"] = phase_multiple;
    json gates = json::array();
    for (int idx : circuit.steps) {
        const Gate& g = gs[idx];
        json e;
        e["index"] = idx;
        e["name"] = gate_name_str(g.name);
        e["operands"] = g.operands;
        gates.push_back(std::move(e));
    }
    j["gates"] = std::move(gates);
    j["search"] = search_evidence(result);
    j["unsat_below"] = result.unsat_depths();
    j["verified"] = true;
    return j.dump(2) + "\n";
}

std::string emit_circuit_json(const std::vector<int>& steps, const ReversibleGateSet& gs,
                              const SearchResult& result) {
    json j;
    j["kind"] = "reversible";
    j["n"] = result.outcome.circuit.n;
    j["d"] = static_cast<int>(steps.size());
    json gates = json::array();
    for (int idx : steps) {
        const ReversibleGate& g = gs.at(static_cast<std::size_t>(idx));
        json e;
        e["index"] = idx;
        e["name"] = gate_name_str(g.kind);
        e["operands"] = g.operands;
        gates.push_back(std::move(e));
    }
    j["gates"] = std::move(gates);
    j["search"] = search_evidence(result);
    j["unsat_below"] = result.unsat_depths();
    j["verified"] = true;
    return j.dump(2) + "\n";
}

NamedCircuit parse_circuit_text(const std::string& text, int n) {
    NamedCircuit out;
    out.n = n;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name, ops;
        if (!(ls >> name)) continue;
        const auto gname = parse_gate_name(name);
        if (!gname)
            throw FileFormatError("circuit line " + std::to_string(lineno) + ": unknown gate \"" +
                                  name + "\"");
        std::vector<int> operands;
        if (ls >> ops) {
            std::istringstream osream(ops);
            std::string tok;
            while (std::getline(osream, tok, ',')) {
                if (tok.empty() || tok[0] != 'q')
                    throw FileFormatError("circuit line " + std::to_string(lineno) +
                                          ": operands must look like q0,q1");
                operands.push_back(std::atoi(tok.c_str() + 1));
            }
        }
        out.gates.emplace_back(*gname, std::move(operands));
    }
    return out;
}

NamedCircuit parse_circuit_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileFormatError(std::string("circuit file: ") + e.what());
    }
    NamedCircuit out;
    out.n = j.value("n", 0);
    out.reversible = j.value("kind", "unitary") == "reversible";
    if (!j.contains("gates") || !j["gates"].is_array())
        throw FileFormatError("circuit file: missing \"gates\" array");
    for (const json& e : j["gates"]) {
        const auto gname = parse_gate_name(e.value("name", ""));
        if (!gname) throw FileFormatError("circuit file: unknown gate name");
        std::vector<int> operands;
        for (const json& q : e["operands"]) operands.push_back(q.get<int>());
        out.gates.emplace_back(*gname, std::move(operands));
    }
    return out;
}

NamedCircuit load_circuit_file(const std::string& path, int n_hint) {
    std::ifstream is(path);
    if (!is) throw FileFormatError("cannot open circuit file: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_circuit_json(text);
    return parse_circuit_text(text, n_hint);
}

}  // namespace gatesynth
