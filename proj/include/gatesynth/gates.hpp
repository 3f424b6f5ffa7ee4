#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatesynth/ring.hpp"

namespace gatesynth {

enum class GateName { X, Y, Z, H, S, Sdg, T, Tdg, CNOT, CZ, TOFFOLI };

const char* gate_name_str(GateName name);
std::optional<GateName> parse_gate_name(const std::string& s);

/**
 * A gate primitive: name, arity, and the exact doubled matrix 2·G at scale 1.
 * Construction checks exact unitarity, (2G)(2G)† = 4I, in ring arithmetic.
 */
struct GatePrim {
    GateName name;
    int arity;
    ScaledMatrix doubled_matrix;  // 2^arity x 2^arity, scale 1
    // Number of leading operand positions that are interchangeable (CZ: 2,
    // TOFFOLI controls: 2). Placement enumeration keeps them sorted so
    // symmetric duplicates are never generated.
    int symmetric_prefix = 1;
};

/// Exact doubled matrix of a named primitive.
const GatePrim& builtin_prim(GateName name);

/**
 * A gate placed on specific qubits of an n-qubit register, with its expanded
 * 2^n x 2^n doubled matrix. Qubit 0 is the most significant bit of
 * computational-basis indices.
 */
struct Gate {
    GateName name;
    std::vector<int> operands;
    ScaledMatrix expanded;  // scale 1
    // Per-row nonzero entries (column, value) of `expanded`; at most 2 per row
    // for the supported gate class.
    std::vector<std::vector<std::pair<int, RingElem>>> row_nonzeros;

    std::string display() const;
};

/// Tensor-extend a primitive onto `operands` of an n-qubit register.
ScaledMatrix expand_to_n(const GatePrim& prim, const std::vector<int>& operands, int n);

/// Place one named primitive; validates operands (distinct, in range).
Gate make_gate(GateName name, const std::vector<int>& operands, int n);

/**
 * Indexed gate set. The index j is the SAT gate identifier. Placements are
 * enumerated deterministically (primitive order, then lexicographic
 * operands); placements whose expanded matrices duplicate an earlier gate
 * are skipped.
 */
struct GateSet {
    int n = 0;
    std::vector<Gate> gates;

    int size() const { return static_cast<int>(gates.size()); }
    const Gate& operator[](int j) const { return gates.at(static_cast<std::size_t>(j)); }

    /// Indices of all placements of any of the given primitives.
    std::vector<int> indices_of(const std::vector<GateName>& prims) const;
};

/**
 * Connectivity restriction: a set of allowed ordered operand tuples.
 * Tuples with two or more qubits restrict multi-qubit placements; listed
 * singletons, if any are present, restrict single-qubit placements.
 */
struct Connectivity {
    std::vector<std::vector<int>> allowed;

    bool permits(const std::vector<int>& operands) const;
    bool restricts_single_qubit() const;
};

GateSet build_gate_set(int n, const std::vector<GateName>& prims,
                       const std::optional<Connectivity>& connectivity = std::nullopt);

/**
 * Structural check backing the coefficient-growth bound: every row of the
 * doubled matrix must have either exactly one nonzero drawn from
 * {±2, ±2i, ±√2±i√2} or exactly two nonzeros each drawn from
 * {±√2, ±i√2, ±1+i, ±1-i}. Gate sets outside this class are refused by the
 * encoder unless explicit bit widths are supplied.
 */
struct BoundViolation {
    int row;
    int col;
    RingElem entry;
    std::string message;
};

std::optional<BoundViolation> validate_gate_for_bound(const Gate& g);

}  // namespace gatesynth
