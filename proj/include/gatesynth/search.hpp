#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gatesynth/encode.hpp"
#include "gatesynth/solve.hpp"

namespace gatesynth {

struct SearchOptions {
    int d_min = 1;
    int d_max = 10;
    std::vector<int> phase_multiples{0};
    std::vector<TypeBound> type_bounds;  // applied to every instance
    WidthPolicy width_policy = WidthPolicy::Theorem1;
    std::vector<int> width_override;
    SolverConfig solver;
    std::string artifact_dir;  // DIMACS and solver logs live here
    int parallel = 1;          // concurrent depths; larger ones cancelled on SAT
    std::ostream* log = nullptr;
    std::string instance_prefix = "instance";
};

/// What happened at one gate count.
struct DepthRecord {
    int depth = 0;
    OutcomeKind verdict = OutcomeKind::SolverError;
    bool by_precheck = false;  // ruled out by ring membership, no solver call
    double solve_seconds = 0.0;
    InstanceStats stats;
    std::string detail;
};

/**
 * Result of the ascending-d search. When the outcome is Sat, minimal_d is the
 * first satisfiable gate count and `optimal` states that every smaller count
 * in [d_min, minimal_d) was proven unsatisfiable (no timeout gaps).
 */
struct SearchResult {
    SynthesisOutcome outcome;
    int minimal_d = -1;
    bool optimal = false;
    std::vector<DepthRecord> record;

    std::vector<int> unsat_depths() const;
};

SearchResult find_min_circuit(const TargetSpec& target, const GateSet& gate_set,
                              const SearchOptions& options);

/// Minimize how many gates from `type_indices` appear, over circuits of up to
/// options.d_max gates (or exactly `fixed_depth` when given). Bounds iterate
/// downward from the first witness.
struct TypeMinResult {
    SynthesisOutcome outcome;
    int minimal_count = -1;
    int witness_depth = -1;
    bool optimal = false;
    std::vector<DepthRecord> record;
};

TypeMinResult minimize_type_count(const TargetSpec& target, const GateSet& gate_set,
                                  const SearchOptions& options,
                                  const std::vector<int>& type_indices,
                                  std::optional<int> fixed_depth = std::nullopt);

}  // namespace gatesynth
