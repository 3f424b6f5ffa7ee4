#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gatesynth/cnf.hpp"
#include "gatesynth/encode.hpp"
#include "gatesynth/verify.hpp"

namespace gatesynth {

/**
 * External SAT solver configuration. The solver is a separate process that
 * takes a DIMACS file as its single positional argument and follows the
 * SAT-competition conventions: exit code 10 with "v" model lines for
 * satisfiable, 20 for unsatisfiable.
 */
struct SolverConfig {
    std::string executable;
    std::vector<std::string> extra_args;
    std::optional<double> timeout_seconds;

    /// Resolve and validate: the executable must exist and be runnable.
    static SolverConfig validated(const std::string& executable,
                                  std::vector<std::string> extra_args = {},
                                  std::optional<double> timeout_seconds = std::nullopt);
};

enum class RawVerdict { Sat, Unsat, Error, Timeout };

struct RawSolve {
    RawVerdict verdict = RawVerdict::Error;
    Model model;          // populated on Sat
    std::string detail;   // error or timeout context
    double wall_seconds = 0.0;
};

/**
 * Run the solver on a DIMACS file, capturing stdout into `output_path`.
 * A cancel callback returning true terminates the run early (reported as a
 * timeout with a "cancelled" detail).
 */
RawSolve run_solver(const SolverConfig& cfg, const std::string& dimacs_path,
                    const std::string& output_path,
                    const std::function<bool()>& cancel = {});

enum class OutcomeKind { Sat, Unsat, Infeasible, SolverError, Timeout };

const char* outcome_kind_str(OutcomeKind k);

struct SynthesisOutcome {
    OutcomeKind kind = OutcomeKind::SolverError;
    Circuit circuit;         // Sat only; verified upstream before reporting
    int phase_multiple = 0;  // Sat only
    std::string detail;
};

/**
 * Read the gate choice per step out of a model. Exactly one selector per
 * step must be true; anything else indicates an encoder bug and throws.
 * Returns the circuit and the matched phase multiple.
 */
std::pair<Circuit, int> decode_circuit(const Model& model, const VarMap& vars, int n);

}  // namespace gatesynth
