#include <map>
#include <sstream>

#include "doctest.h"
#include "gatesynth/cnf.hpp"
#include "support/toy_dpll.hpp"

using namespace gatesynth;
using gatesynth::testing::ToyDpll;

TEST_SUITE_BEGIN("cnf");

namespace {

// Pin a bit vector to a concrete value via assumptions.
void assume_value(std::vector<Lit>& assumptions, const BitVec& x, Int value) {
    for (int t = 0; t < x.width(); ++t) {
        const Lit b = x.bits[static_cast<std::size_t>(t)];
        assumptions.push_back(((value >> t) & 1) ? b : ~b);
    }
}

Int wrap(Int value, int width) {
    const Int mod = Int(1) << width;
    Int r = ((value % mod) + mod) % mod;
    if (r >= (mod >> 1)) r -= mod;
    return r;
}

}  // namespace

TEST_CASE("reserved constants") {
    CnfFormula f;
    CHECK(f.var_count() == 2);
    CHECK(f.clause_count() == 2);
    ToyDpll dpll(f);
    Model m;
    REQUIRE(dpll.solve({}, &m));
    CHECK(m.lit_true(f.lit_true()));
    CHECK(!m.lit_true(f.lit_false()));
}

TEST_CASE("empty clause only via assert_false") {
    CnfFormula f;
    CHECK_THROWS_AS(f.add_clause(std::vector<Lit>{}), std::logic_error);
    f.assert_false();
    ToyDpll dpll(f);
    CHECK(!dpll.solve({}));
}

TEST_CASE("clauses may only reference allocated variables") {
    CnfFormula f;
    CHECK_THROWS_AS(f.add_clause({Lit::pos(99)}), std::logic_error);
}

TEST_CASE("exactly_one clause counts") {
    auto count_for = [](int n) {
        CnfFormula f;
        std::vector<Lit> xs;
        for (int i = 0; i < n; ++i) xs.push_back(f.new_lit());
        const int before = f.clause_count();
        exactly_one(f, xs);
        return f.clause_count() - before;
    };
    CHECK(count_for(1) == 1);
    CHECK(count_for(3) == 4);
    CHECK(count_for(15) == 106);
}

TEST_CASE("exactly_one semantics, exhaustive to 2^g") {
    for (int g = 1; g <= 8; ++g) {
        CnfFormula f;
        std::vector<Lit> xs;
        for (int i = 0; i < g; ++i) xs.push_back(f.new_lit());
        exactly_one(f, xs);
        ToyDpll dpll(f);
        for (int mask = 0; mask < (1 << g); ++mask) {
            std::vector<Lit> assumptions;
            for (int i = 0; i < g; ++i)
                assumptions.push_back((mask >> i) & 1 ? xs[static_cast<std::size_t>(i)]
                                                      : ~xs[static_cast<std::size_t>(i)]);
            CHECK(dpll.solve(assumptions) == (__builtin_popcount(static_cast<unsigned>(mask)) == 1));
        }
    }
}

TEST_CASE("at_most_k edge cases") {
    {
        CnfFormula f;
        std::vector<Lit> xs;
        for (int i = 0; i < 4; ++i) xs.push_back(f.new_lit());
        const int before = f.clause_count();
        at_most_k(f, xs, 0);
        CHECK(f.clause_count() - before == 4);  // unit clauses
    }
    {
        CnfFormula f;
        std::vector<Lit> xs;
        for (int i = 0; i < 5; ++i) xs.push_back(f.new_lit());
        const int before = f.clause_count();
        at_most_k(f, xs, 5);
        CHECK(f.clause_count() == before);  // vacuous
    }
}

TEST_CASE("at_most_k semantics, exhaustive") {
    for (int g = 1; g <= 7; ++g) {
        for (int k = 0; k <= g; ++k) {
            CnfFormula f;
            std::vector<Lit> xs;
            for (int i = 0; i < g; ++i) xs.push_back(f.new_lit());
            at_most_k(f, xs, k);
            ToyDpll dpll(f);
            for (int mask = 0; mask < (1 << g); ++mask) {
                std::vector<Lit> assumptions;
                for (int i = 0; i < g; ++i)
                    assumptions.push_back((mask >> i) & 1 ? xs[static_cast<std::size_t>(i)]
                                                          : ~xs[static_cast<std::size_t>(i)]);
                CHECK(dpll.solve(assumptions) ==
                      (__builtin_popcount(static_cast<unsigned>(mask)) <= k));
            }
        }
    }
}

TEST_CASE("bv_add agrees with native addition (small widths)") {
    for (int w = 2; w <= 4; ++w) {
        CnfFormula f;
        const BitVec x = bv_fresh(f, w);
        const BitVec y = bv_fresh(f, w);
        const BitVec s = bv_add(f, x, y);
        ToyDpll dpll(f);
        const Int lo = -(Int(1) << (w - 1)), hi = (Int(1) << (w - 1)) - 1;
        for (Int a = lo; a <= hi; ++a)
            for (Int b = lo; b <= hi; ++b) {
                std::vector<Lit> assumptions;
                assume_value(assumptions, x, a);
                assume_value(assumptions, y, b);
                Model m;
                REQUIRE(dpll.solve(assumptions, &m));
                CHECK(bv_value(s, m) == wrap(a + b, w));
                // Pinning the output to a wrong value must be unsatisfiable.
                std::vector<Lit> bad = assumptions;
                assume_value(bad, s, wrap(a + b + 1, w));
                CHECK(!dpll.solve(bad));
            }
    }
}

TEST_CASE("bv_add identities") {
    CnfFormula f;
    const BitVec x = bv_fresh(f, 4);
    const BitVec zero = bv_const(f, 0, 4);
    const BitVec s = bv_add(f, x, zero);
    ToyDpll dpll(f);
    for (Int a = -8; a <= 7; ++a) {
        std::vector<Lit> assumptions;
        assume_value(assumptions, x, a);
        Model m;
        REQUIRE(dpll.solve(assumptions, &m));
        CHECK(bv_value(s, m) == a);  // x + 0 = x
    }
    // (-1) + 1 at width 4 is 0.
    CnfFormula g;
    const BitVec a = bv_const(g, -1, 4);
    const BitVec b = bv_const(g, 1, 4);
    const BitVec t = bv_add(g, a, b);
    ToyDpll dpll2(g);
    Model m;
    REQUIRE(dpll2.solve({}, &m));
    CHECK(bv_value(t, m) == 0);
}

TEST_CASE("bv_neg is exact two's-complement negation") {
    for (int w = 2; w <= 5; ++w) {
        CnfFormula f;
        const BitVec x = bv_fresh(f, w);
        const BitVec n = bv_neg(f, x);
        const BitVec nn = bv_neg(f, n);
        ToyDpll dpll(f);
        const Int lo = -(Int(1) << (w - 1)), hi = (Int(1) << (w - 1)) - 1;
        for (Int a = lo; a <= hi; ++a) {
            std::vector<Lit> assumptions;
            assume_value(assumptions, x, a);
            Model m;
            REQUIRE(dpll.solve(assumptions, &m));
            CHECK(bv_value(n, m) == wrap(-a, w));
            if (a != lo) CHECK(bv_value(nn, m) == a);  // neg(neg(x)) = x away from min
        }
    }
}

TEST_CASE("bv_shl1 and sign extension") {
    CnfFormula f;
    const BitVec x = bv_fresh(f, 4);
    const BitVec shifted = bv_shl1(f, x);
    CHECK(shifted.width() == 5);
    const BitVec wide = bv_sign_extend(x, 8);
    CHECK(wide.width() == 8);
    CHECK(bv_sign_extend(x, 4).bits == x.bits);
    CHECK_THROWS_AS(bv_sign_extend(x, 3), std::invalid_argument);
    ToyDpll dpll(f);
    for (Int a : {-2, 0, 3, -8}) {
        std::vector<Lit> assumptions;
        assume_value(assumptions, x, a);
        Model m;
        REQUIRE(dpll.solve(assumptions, &m));
        CHECK(bv_value(shifted, m) == 2 * a);
        CHECK(bv_value(wide, m) == a);
    }
}

TEST_CASE("bv_mul_const") {
    for (Int factor : {Int(0), Int(1), Int(-1), Int(2), Int(-2), Int(3), Int(4), Int(-5)}) {
        CnfFormula f;
        const BitVec x = bv_fresh(f, 4);
        const BitVec p = bv_mul_const(f, x, factor, 9);
        ToyDpll dpll(f);
        for (Int a = -8; a <= 7; ++a) {
            std::vector<Lit> assumptions;
            assume_value(assumptions, x, a);
            Model m;
            REQUIRE(dpll.solve(assumptions, &m));
            CHECK(bv_value(p, m) == factor * a);
        }
    }
}

TEST_CASE("conditional_equal") {
    CnfFormula f;
    const Lit guard = f.new_lit();
    const BitVec x = bv_fresh(f, 3);
    const BitVec y = bv_fresh(f, 3);
    conditional_equal(f, guard, x, y);
    ToyDpll dpll(f);
    for (Int a = -4; a <= 3; ++a)
        for (Int b = -4; b <= 3; ++b) {
            std::vector<Lit> on{guard}, off{~guard};
            assume_value(on, x, a);
            assume_value(on, y, b);
            assume_value(off, x, a);
            assume_value(off, y, b);
            CHECK(dpll.solve(on) == (a == b));
            CHECK(dpll.solve(off));  // unconstrained when the guard is false
        }
    BitVec narrow = bv_fresh(f, 2);
    CHECK_THROWS_AS(conditional_equal(f, guard, x, narrow), std::invalid_argument);
}

TEST_CASE("conditional_equal_const unit-propagates under the guard") {
    CnfFormula f;
    const Lit guard = f.new_lit();
    const BitVec x = bv_fresh(f, 4);
    conditional_equal_const(f, guard, x, -3);
    ToyDpll dpll(f);
    Model m;
    REQUIRE(dpll.solve({guard}, &m));
    CHECK(bv_value(x, m) == -3);
    std::vector<Lit> bad{guard};
    assume_value(bad, x, 5);
    CHECK(!dpll.solve(bad));
}

TEST_CASE("DIMACS output format") {
    CnfFormula f;
    // The two reserved constants occupy variables 1 and 2 with unit clauses;
    // build the documented example on top.
    const Lit a = f.new_lit();
    const Lit b = f.new_lit();
    f.add_clause({a, ~b});
    std::ostringstream os;
    f.write_dimacs(os);
    CHECK(os.str() == "p cnf 4 3\n1 0\n-2 0\n3 -4 0\n");
}

TEST_CASE("DIMACS round-trip preserves counts and clause multiset") {
    CnfFormula f;
    std::vector<Lit> xs;
    for (int i = 0; i < 6; ++i) xs.push_back(f.new_lit());
    exactly_one(f, xs);
    at_most_k(f, xs, 2);
    const BitVec x = bv_fresh(f, 3);
    const BitVec y = bv_fresh(f, 3);
    bv_add(f, x, y);

    std::ostringstream os;
    f.write_dimacs(os);
    std::istringstream is(os.str());
    const CnfFormula g = parse_dimacs(is);
    CHECK(g.var_count() == f.var_count());
    CHECK(g.clause_count() == f.clause_count());

    auto multiset = [](const CnfFormula& h) {
        std::map<std::vector<std::int32_t>, int> m;
        h.for_each_clause([&](const std::vector<Lit>& c) {
            std::vector<std::int32_t> codes;
            for (const Lit& l : c) codes.push_back(l.code);
            ++m[codes];
        });
        return m;
    };
    CHECK(multiset(f) == multiset(g));
}

TEST_CASE("model parsing") {
    const Model m = parse_model("c comment\ns SATISFIABLE\nv 1 -2 0\n");
    CHECK(m.value(1));
    CHECK(!m.value(2));
    const Model wrapped = parse_model("v 1 -2 3\nv -4 0\n");
    CHECK(wrapped.value(3));
    CHECK(!wrapped.value(4));
    CHECK_THROWS_AS(parse_model("s SATISFIABLE\n"), std::runtime_error);
}

TEST_SUITE_END();
