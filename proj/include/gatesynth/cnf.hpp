#pragma once

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <string>
#include <vector>

#include "gatesynth/ring.hpp"

namespace gatesynth {

/// A literal: positive or negated reference to a CNF variable (1-based).
struct Lit {
    std::int32_t code = 0;  // DIMACS convention: ±variable

    Lit() = default;
    explicit Lit(std::int32_t c) : code(c) {}
    static Lit pos(int var) { return Lit(var); }
    static Lit neg(int var) { return Lit(-var); }

    int var() const { return std::abs(code); }
    bool negated() const { return code < 0; }
    Lit operator~() const { return Lit(-code); }
    friend bool operator==(const Lit&, const Lit&) = default;
};

/// Variable assignment extracted from a solver model.
class Model {
  public:
    void set(int var, bool value);
    bool defined(int var) const;
    bool value(int var) const;
    bool lit_true(Lit l) const { return value(l.var()) != l.negated(); }
    int max_var() const { return static_cast<int>(vals_.size()) - 1; }

  private:
    std::vector<signed char> vals_;  // index by var; -1 unknown
};

/**
 * Clause database with a variable allocator. Two variables are reserved at
 * construction and unit-forced to true and false so constant bits can be
 * expressed as ordinary literals.
 */
class CnfFormula {
  public:
    CnfFormula();

    /// Empty database without the reserved constants; used when re-reading
    /// DIMACS files, where variables 1 and 2 carry no special meaning.
    static CnfFormula raw();

    int new_var() { return ++var_count_; }
    Lit new_lit() { return Lit::pos(new_var()); }

    Lit lit_true() const { return true_lit_; }
    Lit lit_false() const { return false_lit_; }

    void add_clause(const std::vector<Lit>& lits);
    void add_clause(std::initializer_list<Lit> lits);
    /// The only way to append an empty (unsatisfiable) clause.
    void assert_false();
    void assert_lit(Lit l) { add_clause({l}); }

    int var_count() const { return var_count_; }
    int clause_count() const { return clause_count_; }

    template <typename F>
    void for_each_clause(F&& fn) const {
        std::vector<Lit> clause;
        for (std::int32_t code : arena_) {
            if (code == 0) {
                fn(clause);
                clause.clear();
            } else {
                clause.push_back(Lit(code));
            }
        }
    }

    void write_dimacs(std::ostream& os) const;
    void write_dimacs_file(const std::string& path) const;

  private:
    struct RawTag {};
    explicit CnfFormula(RawTag) {}

    int var_count_ = 0;
    int clause_count_ = 0;
    std::vector<std::int32_t> arena_;  // clauses flattened, 0-terminated
    Lit true_lit_, false_lit_;

    void append_checked(const Lit* lits, std::size_t n);
};

/// Parse a DIMACS file back into a formula (testing and offline tooling).
CnfFormula parse_dimacs(std::istream& is);

/// Parse "v"-prefixed model lines as printed by SAT-competition solvers.
Model parse_model(const std::string& text);

/// Exactly one of xs is true: one at-least-one clause plus pairwise blocking.
void exactly_one(CnfFormula& f, const std::vector<Lit>& xs);

/// Sequential-counter (Sinz) encoding of "at most k of xs are true".
void at_most_k(CnfFormula& f, const std::vector<Lit>& xs, int k);

/**
 * Two's-complement signed bit vector, least significant bit first.
 * Arithmetic wraps modulo 2^width; callers guarantee results fit.
 */
struct BitVec {
    std::vector<Lit> bits;

    int width() const { return static_cast<int>(bits.size()); }
    Lit msb() const { return bits.back(); }
};

BitVec bv_fresh(CnfFormula& f, int width);
BitVec bv_const(CnfFormula& f, Int value, int width);
bool bv_const_fits(Int value, int width);

/// Ripple-carry sum; result width = operand width (wraparound unreachable by
/// caller guarantee). Fresh variables for sums and carries.
BitVec bv_add(CnfFormula& f, const BitVec& x, const BitVec& y);

/// Two's-complement negation: bitwise complement plus one.
BitVec bv_neg(CnfFormula& f, const BitVec& x);

/// Shift left by one, inserting constant false; width grows by one.
BitVec bv_shl1(CnfFormula& f, const BitVec& x);

/// Replicate the sign bit up to new_width.
BitVec bv_sign_extend(const BitVec& x, int new_width);

/// Sign-extend or truncate to the requested width (truncation is mod 2^w).
BitVec bv_resize(const BitVec& x, int new_width);

/// x * factor at out_width, built from shifts and adds.
BitVec bv_mul_const(CnfFormula& f, const BitVec& x, Int factor, int out_width);

/// guard -> (x == y), bitwise; unconstrained when guard is false.
void conditional_equal(CnfFormula& f, Lit guard, const BitVec& x, const BitVec& y);

/// guard -> (x == value): one clause per bit.
void conditional_equal_const(CnfFormula& f, Lit guard, const BitVec& x, Int value);

/// Unit clauses pinning x to a constant.
void assert_equal_const(CnfFormula& f, const BitVec& x, Int value);

/// Decode a two's-complement value from a model.
Int bv_value(const BitVec& x, const Model& m);

}  // namespace gatesynth
