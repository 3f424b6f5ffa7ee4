#pragma once

#include <array>
#include <variant>
#include <vector>

#include "gatesynth/cnf.hpp"
#include "gatesynth/gates.hpp"
#include "gatesynth/target.hpp"

namespace gatesynth {

enum class WidthPolicy { Theorem1, Tight, Override };

/**
 * Signed bit width for the coefficients of the intermediate product after
 * step i (i.e. i+1 applied doubled gates). Theorem1 is the proven bound
 * ceil(1.5(i+1)) + 2; Tight is the conjectured (i+1) + 2, off by default.
 */
int bit_width(int step_index, WidthPolicy policy,
              const std::vector<int>& width_override = {});

/// Cardinality bound over a subset of gate indices, across all steps.
struct TypeBound {
    std::vector<int> gate_indices;
    int max_count = 0;
};

struct SynthesisProblem {
    TargetSpec target;
    const GateSet* gate_set = nullptr;
    int depth = 1;
    std::vector<int> phase_multiples{0};  // subset of 0..7
    std::vector<TypeBound> type_bounds;
    WidthPolicy width_policy = WidthPolicy::Theorem1;
    std::vector<int> width_override;
};

/**
 * Where every decision variable lives: selectors x_{i,j}, optional one-hot
 * phase selectors, and the coefficient bit vectors of each intermediate
 * product (per step, tracked column, matrix row, ring component).
 */
class VarMap {
  public:
    int depth() const { return d_; }
    int gate_count() const { return g_; }
    int selector_var(int step, int gate) const {
        return selector_[static_cast<std::size_t>(step)][static_cast<std::size_t>(gate)];
    }
    /// Phases that survived the feasibility precheck and got encoded.
    const std::vector<int>& encoded_phases() const { return encoded_phases_; }
    /// Selector variable for phase multiple k; 0 when a single phase was
    /// encoded unconditionally.
    int phase_selector_var(int k) const { return phase_selector_[static_cast<std::size_t>(k)]; }

    /// Matrix mode: coefficient bits of component comp of entry (row, col) of
    /// the product after `step` (col must be unmasked).
    const BitVec& coeff(int step, int row, int col, int comp) const;
    /// State-mapping mode: coefficient bits for the propagated vector of a pair.
    const BitVec& coeff_state(int step, int pair, int row, int comp) const;

    bool states_mode() const { return states_mode_; }

  private:
    friend class Encoder;
    int d_ = 0, g_ = 0, rows_ = 0;
    bool states_mode_ = false;
    std::vector<std::vector<int>> selector_;
    std::array<int, 8> phase_selector_{};
    std::vector<int> encoded_phases_;
    std::vector<int> col_index_;  // matrix mode: column id -> tracked index (-1 masked)
    int tracked_ = 0;
    std::vector<std::vector<BitVec>> coeff_;  // [step][(track*rows + row)*4 + comp]
};

struct InstanceStats {
    int variables = 0;
    int clauses = 0;
    std::vector<int> widths;  // per step
};

struct EncodedInstance {
    CnfFormula formula;
    VarMap vars;
    InstanceStats stats;
};

/// The instance cannot be satisfiable at this gate count; no solving needed.
struct Infeasibility {
    std::string reason;
};

using EncodeOutcome = std::variant<EncodedInstance, Infeasibility>;

/// Feasibility precheck only: phases of `phase_multiples` for which the
/// rescaled, phase-rotated target exists in the ring and fits the widths.
std::vector<int> feasible_phases(const SynthesisProblem& p, std::string* reason = nullptr);

EncodeOutcome encode_instance(const SynthesisProblem& p);

/// Convenience entry point for specification by state mapping.
EncodeOutcome encode_state_mapping(const std::vector<StatePair>& pairs, int n,
                                   const GateSet& gate_set, int depth,
                                   const std::vector<int>& phase_multiples = {0},
                                   const std::vector<TypeBound>& type_bounds = {},
                                   WidthPolicy policy = WidthPolicy::Theorem1,
                                   const std::vector<int>& width_override = {});

}  // namespace gatesynth
