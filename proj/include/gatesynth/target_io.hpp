#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatesynth/gates.hpp"
#include "gatesynth/reversible.hpp"
#include "gatesynth/search.hpp"
#include "gatesynth/target.hpp"
#include "gatesynth/verify.hpp"

namespace gatesynth {

/// Raised on malformed target or circuit files, with positional context.
struct FileFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A target file holds a matrix, a state mapping, or a truth table.
struct LoadedTarget {
    std::optional<TargetSpec> spec;       // matrix or states
    std::optional<TruthTableSpec> table;  // truthtable
};

LoadedTarget parse_target_text(const std::string& text);
LoadedTarget load_target_file(const std::string& path);

std::string target_to_text(const TargetSpec& t);
std::string truthtable_to_text(const TruthTableSpec& t);
void write_target_file(const std::string& path, const TargetSpec& t);

/// Builtin targets, generated from the gate library's exact matrices:
/// toffoli, and, swap, fredkin, cz, ghz:N.
LoadedTarget builtin_target(const std::string& name);

/// A circuit read back from a file: named gates with operands.
struct NamedCircuit {
    int n = 0;
    std::vector<std::pair<GateName, std::vector<int>>> gates;
    bool reversible = false;
};

/// One gate per line, "<name> q<i>[,q<j>...]", step 0 first.
std::string emit_circuit_text(const Circuit& circuit, const GateSet& gs);
std::string emit_circuit_text(const std::vector<int>& steps, const ReversibleGateSet& gs);

/// Machine-readable emission with optimality evidence.
std::string emit_circuit_json(const Circuit& circuit, const GateSet& gs, int phase_multiple,
                              const SearchResult& result);
std::string emit_circuit_json(const std::vector<int>& steps, const ReversibleGateSet& gs,
                              const SearchResult& result);

NamedCircuit parse_circuit_text(const std::string& text, int n);
NamedCircuit parse_circuit_json(const std::string& text);
NamedCircuit load_circuit_file(const std::string& path, int n_hint);

}  // namespace gatesynth
