#pragma once

#include <string>
#include <vector>

#include "gatesynth/ring.hpp"

namespace gatesynth {

/// One specified state transition: column vectors of length 2^n.
struct StatePair {
    ScaledMatrix input;   // 2^n x 1
    ScaledMatrix output;  // 2^n x 1
};

/**
 * What to synthesize: either a full (possibly column-masked) unitary matrix
 * or a list of state mappings. Masked columns model fixed inputs and clean
 * ancillas; they are excluded from every constraint.
 */
struct TargetSpec {
    enum class Kind { Matrix, States };

    Kind kind = Kind::Matrix;
    int n = 0;
    ScaledMatrix matrix;          // Kind::Matrix
    std::vector<char> keep_col;   // Kind::Matrix, size 2^n
    std::vector<StatePair> pairs; // Kind::States

    static TargetSpec from_matrix(ScaledMatrix m);
    static TargetSpec from_states(int n, std::vector<StatePair> pairs);

    int dim() const { return 1 << n; }
    std::vector<int> kept_columns() const;

    /// Tensor identity wires onto the target (dirty ancillas).
    TargetSpec with_dirty_ancillas(int count) const;

    /// Append `count` clean ancilla qubits: target becomes U ⊗ I with the
    /// columns where any ancilla reads |1> removed.
    TargetSpec with_clean_ancillas(int count) const;
};

/// Keep only the listed columns (fixed-input restriction).
TargetSpec mask_columns(const TargetSpec& t, const std::vector<int>& kept);

/// Keep the columns whose basis index reads |0> on every listed qubit.
TargetSpec mask_columns_clean(const TargetSpec& t, const std::vector<int>& clean_qubits);

}  // namespace gatesynth
