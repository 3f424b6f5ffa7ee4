#include <sys/stat.h>

#include <fstream>

#include "doctest.h"
#include "gatesynth/encode.hpp"
#include "gatesynth/solve.hpp"
#include "support/harness.hpp"

using namespace gatesynth;
using namespace gatesynth::testing;

TEST_SUITE_BEGIN("solve");

TEST_CASE("solver config validation") {
    CHECK_NOTHROW(SolverConfig::validated(solver_path()));
    CHECK_THROWS_AS(SolverConfig::validated("/nonexistent/solver-binary"),
                    std::invalid_argument);
}

TEST_CASE("run_solver classifies SAT and UNSAT") {
    ScratchDir dir("solve-basic");
    const SolverConfig cfg = SolverConfig::validated(solver_path());
    {
        const std::string cnf = (dir.path() / "sat.cnf").string();
        std::ofstream(cnf) << "p cnf 1 1\n1 0\n";
        const RawSolve r = run_solver(cfg, cnf, (dir.path() / "sat.out").string());
        REQUIRE(r.verdict == RawVerdict::Sat);
        CHECK(r.model.value(1));
    }
    {
        const std::string cnf = (dir.path() / "unsat.cnf").string();
        std::ofstream(cnf) << "p cnf 1 2\n1 0\n-1 0\n";
        const RawSolve r = run_solver(cfg, cnf, (dir.path() / "unsat.out").string());
        CHECK(r.verdict == RawVerdict::Unsat);
    }
}

TEST_CASE("vanished executable surfaces as a solver error") {
    ScratchDir dir("solve-gone");
    const std::string fake = (dir.path() / "fake-solver").string();
    std::ofstream(fake) << "#!/bin/sh\nexit 10\n";
    ::chmod(fake.c_str(), 0755);
    const SolverConfig cfg = SolverConfig::validated(fake);
    std::filesystem::remove(fake);
    const std::string cnf = (dir.path() / "x.cnf").string();
    std::ofstream(cnf) << "p cnf 1 1\n1 0\n";
    const RawSolve r = run_solver(cfg, cnf, (dir.path() / "x.out").string());
    CHECK(r.verdict == RawVerdict::Error);
}

TEST_CASE("nonconforming exit codes surface as solver errors") {
    ScratchDir dir("solve-badexit");
    const std::string fake = (dir.path() / "fake-solver").string();
    std::ofstream(fake) << "#!/bin/sh\necho weird\nexit 7\n";
    ::chmod(fake.c_str(), 0755);
    const SolverConfig cfg = SolverConfig::validated(fake);
    const std::string cnf = (dir.path() / "x.cnf").string();
    std::ofstream(cnf) << "p cnf 1 1\n1 0\n";
    const RawSolve r = run_solver(cfg, cnf, (dir.path() / "x.out").string());
    CHECK(r.verdict == RawVerdict::Error);
    CHECK(r.detail.find("7") != std::string::npos);
}

TEST_CASE("timeouts terminate the process") {
    ScratchDir dir("solve-timeout");
    const std::string slow = (dir.path() / "slow-solver").string();
    std::ofstream(slow) << "#!/bin/sh\nsleep 30\nexit 10\n";
    ::chmod(slow.c_str(), 0755);
    const SolverConfig cfg = SolverConfig::validated(slow, {}, 0.2);
    const std::string cnf = (dir.path() / "x.cnf").string();
    std::ofstream(cnf) << "p cnf 1 1\n1 0\n";
    const RawSolve r = run_solver(cfg, cnf, (dir.path() / "x.out").string());
    CHECK(r.verdict == RawVerdict::Timeout);
    CHECK(r.wall_seconds < 5.0);
}

TEST_CASE("decoding is deterministic and defensive") {
    const GateSet gs = build_gate_set(1, {GateName::H, GateName::T});
    Circuit ref{1, {1}};
    const TargetSpec target =
        TargetSpec::from_matrix(simulate_exact(ref, gs).canonicalized());
    SynthesisProblem p;
    p.target = target;
    p.gate_set = &gs;
    p.depth = 1;
    EncodeOutcome enc = encode_instance(p);
    auto& inst = std::get<EncodedInstance>(enc);

    ScratchDir dir("solve-decode");
    const std::string cnf = (dir.path() / "t.cnf").string();
    inst.formula.write_dimacs_file(cnf);
    const SolverConfig cfg = SolverConfig::validated(solver_path());
    const RawSolve r = run_solver(cfg, cnf, (dir.path() / "t.out").string());
    REQUIRE(r.verdict == RawVerdict::Sat);

    // Identical solver output decodes identically.
    std::ifstream is(dir.path() / "t.out");
    std::stringstream buf;
    buf << is.rdbuf();
    const Model m1 = parse_model(buf.str());
    const Model m2 = parse_model(buf.str());
    CHECK(decode_circuit(m1, inst.vars, 1) == decode_circuit(m2, inst.vars, 1));

    // Zero or two selected gates at a step is a hard error.
    Model none;
    Model both;
    for (int v = 1; v <= inst.stats.variables; ++v) {
        none.set(v, false);
        both.set(v, true);
    }
    CHECK_THROWS_AS(decode_circuit(none, inst.vars, 1), std::logic_error);
    CHECK_THROWS_AS(decode_circuit(both, inst.vars, 1), std::logic_error);
}

TEST_SUITE_END();
