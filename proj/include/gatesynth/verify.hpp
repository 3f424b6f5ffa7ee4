#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatesynth/gates.hpp"
#include "gatesynth/target.hpp"

namespace gatesynth {

/// Ordered gate-index sequence; step 0 is applied first.
struct Circuit {
    int n = 0;
    std::vector<int> steps;

    int depth() const { return static_cast<int>(steps.size()); }
    friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct Mismatch {
    int row = 0;
    int col = 0;  // column, or pair index for state mappings
    RingElem expected;
    RingElem got;
};

struct VerificationReport {
    bool pass = false;
    int phase_multiple = 0;               // the multiple that matched, when passing
    std::optional<Mismatch> first_mismatch;  // against the last phase tried, when failing

    std::string describe() const;
};

/**
 * Exact product of the doubled gate matrices, step 0 innermost (applied
 * first); result scale equals the circuit length. Pure ring arithmetic with
 * no dependence on the CNF pipeline.
 */
ScaledMatrix simulate_exact(const Circuit& circuit, const GateSet& gate_set);

/// Does the circuit implement the target, up to one of the allowed global
/// phase multiples, on the unmasked columns (or specified state pairs)?
VerificationReport check_implements(const Circuit& circuit, const GateSet& gate_set,
                                    const TargetSpec& target,
                                    const std::vector<int>& phase_multiples = {0});

}  // namespace gatesynth
