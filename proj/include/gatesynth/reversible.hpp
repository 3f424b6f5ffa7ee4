#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gatesynth/cnf.hpp"
#include "gatesynth/gates.hpp"
#include "gatesynth/search.hpp"

namespace gatesynth {

/**
 * Classical reversible specification: a (possibly partial) truth table over
 * n wires. Wire 0 is the leftmost character of a row string and the least
 * significant bit of the packed representation. '-' marks a don't-care
 * output bit.
 */
struct TruthTableRow {
    std::uint32_t input = 0;
    std::uint32_t output = 0;
    std::uint32_t care_mask = 0;  // bit set = output bit specified
};

struct TruthTableSpec {
    int n = 0;
    std::vector<TruthTableRow> rows;

    /// Text format: one row per line, "<input bits> -> <output bits>",
    /// '-' as don't-care, '#' comments.
    static TruthTableSpec parse(std::istream& is);
    std::string serialize() const;

    /// Throws on two rows with the same input and conflicting outputs.
    void check_consistent() const;
    /// Injectivity warning for fully specified tables (partial specs may
    /// still be realizable, so this never throws).
    std::optional<std::string> reversibility_warning() const;
};

/// A NOT/CNOT/Toffoli placement; the target wire is the last operand.
struct ReversibleGate {
    GateName kind = GateName::X;  // X, CNOT or TOFFOLI
    std::vector<int> operands;

    std::string display() const;
};

using ReversibleGateSet = std::vector<ReversibleGate>;

ReversibleGateSet build_reversible_gate_set(
    int n, const std::vector<GateName>& prims,
    const std::optional<Connectivity>& connectivity = std::nullopt);

std::uint32_t apply_reversible(const ReversibleGate& g, std::uint32_t state);
std::uint32_t simulate_reversible(const std::vector<int>& steps, const ReversibleGateSet& gs,
                                  std::uint32_t input);

/// Wire variables per specified input row, per layer 0..d, per wire; selector
/// variables shared across rows.
struct ReversibleVarMap {
    int d = 0, g = 0, n = 0;
    std::vector<std::vector<int>> selector;             // [step][gate]
    std::vector<std::vector<std::vector<int>>> wire;    // [row][layer][wire]

    int selector_var(int step, int gate) const {
        return selector[static_cast<std::size_t>(step)][static_cast<std::size_t>(gate)];
    }
    int wire_var(int row, int layer, int q) const {
        return wire[static_cast<std::size_t>(row)][static_cast<std::size_t>(layer)]
                   [static_cast<std::size_t>(q)];
    }
};

struct ReversibleInstance {
    CnfFormula formula;
    ReversibleVarMap vars;
};

ReversibleInstance encode_reversible(const TruthTableSpec& spec, const ReversibleGateSet& gs,
                                     int depth);

/// Decode shared selectors from a model (defensive exactly-one check).
std::vector<int> decode_reversible(const Model& model, const ReversibleVarMap& vars);

/// Does the gate word reproduce every specified row?
bool reversible_implements(const std::vector<int>& steps, const ReversibleGateSet& gs,
                           const TruthTableSpec& spec);

/// Iterative deepening over the gate count, with truth-table verification of
/// every witness.
SearchResult synth_reversible_min(const TruthTableSpec& spec, const ReversibleGateSet& gs,
                                  const SearchOptions& options);

}  // namespace gatesynth
