#include "doctest.h"
#include "gatesynth/gates.hpp"
#include "support/harness.hpp"

using namespace gatesynth;
using namespace gatesynth::testing;

TEST_SUITE_BEGIN("gates");

TEST_CASE("builtin doubled matrices match the scaled displays") {
    const Gate t = make_gate(GateName::T, {0}, 1);
    CHECK(t.expanded.at(0, 0) == RingElem{2, 0, 0, 0});
    CHECK(t.expanded.at(1, 1) == RingElem{0, 0, 1, 1});
    CHECK(t.expanded.at(0, 1) == RingElem::zero());

    const Gate h = make_gate(GateName::H, {0}, 1);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const RingElem& e = h.expanded.at(r, c);
            CHECK(e.a == 0);
            CHECK(e.b == 0);
            CHECK(e.d == 0);
            CHECK(std::abs(e.c) == 1);
        }
    CHECK(h.expanded.at(1, 1) == RingElem{0, 0, -1, 0});

    const Gate cnot = make_gate(GateName::CNOT, {0, 1}, 2);
    const int image[4] = {0, 1, 3, 2};
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r)
            CHECK(cnot.expanded.at(r, c) ==
                  (r == image[c] ? RingElem{2, 0, 0, 0} : RingElem::zero()));
}

TEST_CASE("make_gate validates operands") {
    CHECK_THROWS_AS(make_gate(GateName::T, {1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_gate(GateName::CNOT, {0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_gate(GateName::CNOT, {0}, 2), std::invalid_argument);
}

TEST_CASE("exact unitarity of every builtin placement, n <= 3") {
    const std::vector<GateName> all = {GateName::X,   GateName::Y,   GateName::Z,
                                       GateName::H,   GateName::S,   GateName::Sdg,
                                       GateName::T,   GateName::Tdg, GateName::CNOT,
                                       GateName::CZ,  GateName::TOFFOLI};
    for (int n = 1; n <= 3; ++n) {
        GateSet gs;
        std::vector<GateName> usable;
        for (GateName g : all)
            if (builtin_prim(g).arity <= n) usable.push_back(g);
        gs = build_gate_set(n, usable);
        for (int j = 0; j < gs.size(); ++j) {
            const ScaledMatrix prod = scaled_mat_mul(gs[j].expanded, gs[j].expanded.dagger());
            CHECK(prod.is_diagonal_constant({4, 0, 0, 0}));
        }
    }
}

TEST_CASE("expansion agrees with the float Kronecker construction") {
    // Cross-check route: build the expanded gate in floating point from
    // explicit Kronecker products and index permutations via basis vectors.
    const std::vector<GateName> all = {GateName::X, GateName::H,  GateName::S,
                                       GateName::T, GateName::CNOT, GateName::CZ,
                                       GateName::TOFFOLI};
    for (int n = 1; n <= 3; ++n) {
        for (GateName name : all) {
            const GatePrim& prim = builtin_prim(name);
            if (prim.arity > n) continue;
            GateSet gs = build_gate_set(n, {name});
            for (int j = 0; j < gs.size(); ++j) {
                const Gate& g = gs[j];
                const CMat expanded = to_cmat(g.expanded);
                // Reference: act on each basis column with the primitive.
                const CMat prim_c = to_cmat(prim.doubled_matrix);
                const int dim = 1 << n;
                double worst = 0.0;
                for (int col = 0; col < dim; ++col) {
                    std::vector<std::complex<double>> vec(static_cast<std::size_t>(dim));
                    int cop = 0;
                    for (std::size_t k = 0; k < g.operands.size(); ++k)
                        cop |= ((col >> (n - 1 - g.operands[k])) & 1)
                               << (prim.arity - 1 - static_cast<int>(k));
                    for (int rop = 0; rop < (1 << prim.arity); ++rop) {
                        int row = col;
                        for (std::size_t k = 0; k < g.operands.size(); ++k) {
                            const int bitpos = n - 1 - g.operands[k];
                            const int bit = (rop >> (prim.arity - 1 - static_cast<int>(k))) & 1;
                            row = (row & ~(1 << bitpos)) | (bit << bitpos);
                        }
                        vec[static_cast<std::size_t>(row)] +=
                            prim_c[static_cast<std::size_t>(rop)][static_cast<std::size_t>(cop)];
                    }
                    for (int row = 0; row < dim; ++row)
                        worst = std::max(worst,
                                         std::abs(expanded[static_cast<std::size_t>(row)]
                                                          [static_cast<std::size_t>(col)] -
                                                  vec[static_cast<std::size_t>(row)]));
                }
                CHECK(worst <= 1e-12);
            }
        }
    }
}

TEST_CASE("expansion block structure for H on qubit 1 of 2") {
    const Gate g = make_gate(GateName::H, {1}, 2);
    // Qubit 0 (most significant) untouched: matrix is I (x) 2H in blocks.
    for (int blk = 0; blk < 2; ++blk) {
        const int off = 2 * blk;
        CHECK(g.expanded.at(off, off) == RingElem{0, 0, 1, 0});
        CHECK(g.expanded.at(off + 1, off + 1) == RingElem{0, 0, -1, 0});
        CHECK(g.expanded.at(off, off + 1) == RingElem{0, 0, 1, 0});
    }
    CHECK(g.expanded.at(0, 2) == RingElem::zero());
}

TEST_CASE("CNOT(control 0, target 2) in n=3 permutes rows 4..7 pairwise") {
    const Gate g = make_gate(GateName::CNOT, {0, 2}, 3);
    const int image[8] = {0, 1, 2, 3, 5, 4, 7, 6};
    for (int c = 0; c < 8; ++c)
        for (int r = 0; r < 8; ++r)
            CHECK(g.expanded.at(r, c) ==
                  (r == image[c] ? RingElem{2, 0, 0, 0} : RingElem::zero()));
}

TEST_CASE("gate set sizes match the paper's counts") {
    const GateSet fifteen = build_gate_set(
        3, {GateName::H, GateName::T, GateName::Tdg, GateName::CNOT});
    CHECK(fifteen.size() == 15);

    const GateSet thirty_three = build_gate_set(
        3, {GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S, GateName::Sdg,
            GateName::T, GateName::Tdg, GateName::CNOT, GateName::CZ});
    CHECK(thirty_three.size() == 33);

    const GateSet two = build_gate_set(1, {GateName::H, GateName::T});
    CHECK(two.size() == 2);
}

TEST_CASE("symmetric placements are deduplicated") {
    const GateSet cz = build_gate_set(2, {GateName::CZ});
    CHECK(cz.size() == 1);
    const GateSet toff = build_gate_set(3, {GateName::TOFFOLI});
    CHECK(toff.size() == 3);  // one per target choice
}

TEST_CASE("connectivity filtering") {
    Connectivity line;
    line.allowed = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    const GateSet gs =
        build_gate_set(3, {GateName::H, GateName::CNOT}, line);
    int cnots = 0;
    for (int j = 0; j < gs.size(); ++j)
        if (gs[j].name == GateName::CNOT) {
            ++cnots;
            CHECK(line.permits(gs[j].operands));
        }
    CHECK(cnots == 4);
    CHECK(gs.size() == 7);  // 3 H placements unrestricted + 4 CNOTs
}

TEST_CASE("indices_of selects placements by primitive") {
    const GateSet gs = build_gate_set(1, {GateName::H, GateName::T, GateName::Tdg});
    const auto t_type = gs.indices_of({GateName::T, GateName::Tdg});
    CHECK(t_type == std::vector<int>{1, 2});
}

TEST_CASE("row structure validation") {
    const GateSet gs = build_gate_set(
        3, {GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S, GateName::Sdg,
            GateName::T, GateName::Tdg, GateName::CNOT, GateName::CZ, GateName::TOFFOLI});
    for (int j = 0; j < gs.size(); ++j)
        CHECK(!validate_gate_for_bound(gs[j]).has_value());

    // A synthetic gate with a (1,1,1,1)-type entry is refused.
    Gate bad = make_gate(GateName::H, {0}, 1);
    bad.expanded.at(0, 0) = {1, 1, 1, 1};
    bad.row_nonzeros[0][0].second = {1, 1, 1, 1};
    const auto violation = validate_gate_for_bound(bad);
    REQUIRE(violation.has_value());
    CHECK(violation->row == 0);
    CHECK(violation->entry == RingElem{1, 1, 1, 1});
}

TEST_SUITE_END();
