#include <random>
#include <sstream>

#include "doctest.h"
#include "gatesynth/reversible.hpp"
#include "support/harness.hpp"
#include "support/oracles.hpp"
#include "support/toy_dpll.hpp"

using namespace gatesynth;
using namespace gatesynth::testing;

TEST_SUITE_BEGIN("reversible");

namespace {

TruthTableSpec table_from(const std::string& text) {
    std::istringstream is(text);
    return TruthTableSpec::parse(is);
}

TruthTableSpec full_table_of(const ReversibleGateSet& gs, const std::vector<int>& word, int n) {
    TruthTableSpec spec;
    spec.n = n;
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t x = 0; x <= full; ++x) {
        TruthTableRow row;
        row.input = x;
        row.output = simulate_reversible(word, gs, x);
        row.care_mask = full;
        spec.rows.push_back(row);
    }
    return spec;
}

}  // namespace

TEST_CASE("truth table parsing and serialization") {
    const TruthTableSpec spec = table_from("# swap\n00 -> 00\n01 -> 10\n10 -> 01\n11 -> 1-\n");
    CHECK(spec.n == 2);
    REQUIRE(spec.rows.size() == 4);
    CHECK(spec.rows[1].input == 2u);   // leftmost char is wire 0 = LSB
    CHECK(spec.rows[1].output == 1u);
    CHECK(spec.rows[3].care_mask == 1u);  // second bit is don't-care
    CHECK(spec.serialize() == "00 -> 00\n01 -> 10\n10 -> 01\n11 -> 1-\n");

    CHECK_THROWS_AS(table_from("0 -> 0\n11 -> 00\n"), std::runtime_error);
    CHECK_THROWS_AS(table_from("0x -> 00\n"), std::runtime_error);
    CHECK_THROWS_AS(table_from(""), std::runtime_error);
    // Same input, conflicting output.
    CHECK_THROWS_AS(table_from("0 -> 0\n0 -> 1\n"), std::invalid_argument);
}

TEST_CASE("reversibility warning on non-injective full tables") {
    const TruthTableSpec collide = table_from("0 -> 0\n1 -> 0\n");
    CHECK(collide.reversibility_warning().has_value());
    const TruthTableSpec partial = table_from("0 -> 0\n1 -> -\n");
    CHECK(!partial.reversibility_warning().has_value());
}

TEST_CASE("reversible gate set enumeration") {
    const ReversibleGateSet all3 = build_reversible_gate_set(
        3, {GateName::X, GateName::CNOT, GateName::TOFFOLI});
    CHECK(all3.size() == 3 + 6 + 3);  // X per wire, ordered CNOT pairs, Toffoli targets
    const ReversibleGateSet xc = build_reversible_gate_set(3, {GateName::X, GateName::CNOT});
    CHECK(xc.size() == 9);
    CHECK_THROWS_AS(build_reversible_gate_set(2, {GateName::H}), std::invalid_argument);
}

TEST_CASE("gate simulation semantics") {
    CHECK(apply_reversible({GateName::X, {1}}, 0b000) == 0b010);
    CHECK(apply_reversible({GateName::CNOT, {0, 2}}, 0b001) == 0b101);
    CHECK(apply_reversible({GateName::CNOT, {0, 2}}, 0b010) == 0b010);
    CHECK(apply_reversible({GateName::TOFFOLI, {0, 1, 2}}, 0b011) == 0b111);
    CHECK(apply_reversible({GateName::TOFFOLI, {0, 1, 2}}, 0b001) == 0b001);
}

TEST_CASE("identity table with only X is unsatisfiable at d=1") {
    const TruthTableSpec id = table_from("0 -> 0\n1 -> 1\n");
    const ReversibleGateSet gs = build_reversible_gate_set(1, {GateName::X});
    ReversibleInstance inst = encode_reversible(id, gs, 1);
    ToyDpll dpll(inst.formula);
    CHECK(!dpll.solve({}));
}

TEST_CASE("SWAP table needs exactly 3 CNOTs") {
    const TruthTableSpec swap = table_from("00 -> 00\n01 -> 10\n10 -> 01\n11 -> 11\n");
    const ReversibleGateSet gs = build_reversible_gate_set(2, {GateName::CNOT});
    ScratchDir dir("rev-swap");
    const SearchResult r = synth_reversible_min(swap, gs, default_search_options(dir.path(), 4));
    REQUIRE(r.outcome.kind == OutcomeKind::Sat);
    CHECK(r.minimal_d == 3);
    CHECK(r.optimal);
    CHECK(r.unsat_depths() == std::vector<int>{1, 2});
    CHECK(reversible_implements(r.outcome.circuit.steps, gs, swap));
    CHECK(bfs_reversible_min_depth(gs, swap, 4) == 3);
}

TEST_CASE("Toffoli is unreachable from X and CNOT placements up to d=6") {
    const TruthTableSpec toffoli = table_from(
        "000 -> 000\n100 -> 100\n010 -> 010\n110 -> 110\n"
        "001 -> 001\n101 -> 101\n011 -> 111\n111 -> 011\n");
    const ReversibleGateSet affine = build_reversible_gate_set(3, {GateName::X, GateName::CNOT});
    ScratchDir dir("rev-toffoli");
    const SearchResult r =
        synth_reversible_min(toffoli, affine, default_search_options(dir.path(), 6));
    CHECK(r.outcome.kind == OutcomeKind::Unsat);
    CHECK(r.unsat_depths() == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(bfs_reversible_min_depth(affine, toffoli, 6) == -1);
}

TEST_CASE("Toffoli with Toffoli available is found at d=1; X placements at d=1") {
    const ReversibleGateSet gs = build_reversible_gate_set(
        3, {GateName::X, GateName::CNOT, GateName::TOFFOLI});
    const TruthTableSpec toffoli = table_from(
        "000 -> 000\n100 -> 100\n010 -> 010\n110 -> 110\n"
        "001 -> 001\n101 -> 101\n011 -> 111\n111 -> 011\n");
    ScratchDir dir("rev-easy");
    const SearchResult r = synth_reversible_min(toffoli, gs, default_search_options(dir.path(), 2));
    REQUIRE(r.outcome.kind == OutcomeKind::Sat);
    CHECK(r.minimal_d == 1);

    // NOT on wire 1 of two wires.
    const TruthTableSpec x1 = table_from("00 -> 01\n10 -> 11\n01 -> 00\n11 -> 10\n");
    const ReversibleGateSet gs2 = build_reversible_gate_set(2, {GateName::X, GateName::CNOT});
    ScratchDir dir2("rev-x1");
    const SearchResult r2 =
        synth_reversible_min(x1, gs2, default_search_options(dir2.path(), 2));
    REQUIRE(r2.outcome.kind == OutcomeKind::Sat);
    CHECK(r2.minimal_d == 1);
}

TEST_CASE("oracle equivalence on random reversible targets") {
    std::mt19937_64 rng(17);
    const ReversibleGateSet gs = build_reversible_gate_set(
        3, {GateName::X, GateName::CNOT, GateName::TOFFOLI});
    ScratchDir dir("rev-oracle");
    int checked = 0;
    for (int trial = 0; trial < 24; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 4);
        std::vector<int> word;
        for (int i = 0; i < len; ++i)
            word.push_back(static_cast<int>(rng() % gs.size()));
        const TruthTableSpec spec = full_table_of(gs, word, 3);
        const int oracle = bfs_reversible_min_depth(gs, spec, 4);
        REQUIRE(oracle >= 0);
        SearchOptions opts = default_search_options(dir.path(), 4);
        opts.instance_prefix = "oracle" + std::to_string(trial);
        const SearchResult r = synth_reversible_min(spec, gs, opts);
        if (oracle == 0) {
            CHECK(r.minimal_d == 0);
        } else {
            REQUIRE(r.outcome.kind == OutcomeKind::Sat);
            CHECK(r.minimal_d == oracle);
            CHECK(reversible_implements(r.outcome.circuit.steps, gs, spec));
        }
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("tightening a don't-care never lowers the minimal gate count") {
    std::mt19937_64 rng(23);
    const ReversibleGateSet gs = build_reversible_gate_set(2, {GateName::X, GateName::CNOT});
    ScratchDir dir("rev-dontcare");
    for (int trial = 0; trial < 6; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 3);
        std::vector<int> word;
        for (int i = 0; i < len; ++i)
            word.push_back(static_cast<int>(rng() % gs.size()));
        TruthTableSpec tight = full_table_of(gs, word, 2);
        TruthTableSpec loose = tight;
        // Drop one specified output bit.
        const std::size_t row = rng() % loose.rows.size();
        const int bit = static_cast<int>(rng() % 2);
        loose.rows[row].care_mask &= ~(1u << bit);

        SearchOptions o1 = default_search_options(dir.path(), 4);
        o1.instance_prefix = "loose" + std::to_string(trial);
        SearchOptions o2 = default_search_options(dir.path(), 4);
        o2.instance_prefix = "tight" + std::to_string(trial);
        const SearchResult rl = synth_reversible_min(loose, gs, o1);
        const SearchResult rt = synth_reversible_min(tight, gs, o2);
        REQUIRE(rt.outcome.kind == OutcomeKind::Sat);
        CHECK(rl.minimal_d <= rt.minimal_d);
    }
}

TEST_CASE("simulation soundness of decoded circuits") {
    // Every SAT decode above already passed reversible_implements; spot-check
    // the permutation view explicitly on a found SWAP witness.
    const TruthTableSpec swap = table_from("00 -> 00\n01 -> 10\n10 -> 01\n11 -> 11\n");
    const ReversibleGateSet gs = build_reversible_gate_set(2, {GateName::CNOT});
    ScratchDir dir("rev-sim");
    const SearchResult r = synth_reversible_min(swap, gs, default_search_options(dir.path(), 3));
    REQUIRE(r.outcome.kind == OutcomeKind::Sat);
    for (std::uint32_t x = 0; x < 4; ++x) {
        const std::uint32_t y = simulate_reversible(r.outcome.circuit.steps, gs, x);
        const std::uint32_t want = ((x & 1u) << 1) | ((x >> 1) & 1u);
        CHECK(y == want);
    }
}

TEST_SUITE_END();
