#include "gatesynth/cnf.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gatesynth {

void Model::set(int var, bool value) {
    if (var <= 0) throw std::invalid_argument("Model::set: variable must be positive");
    if (static_cast<std::size_t>(var) >= vals_.size()) vals_.resize(static_cast<std::size_t>(var) + 1, -1);
    vals_[static_cast<std::size_t>(var)] = value ? 1 : 0;
}

bool Model::defined(int var) const {
    return var > 0 && static_cast<std::size_t>(var) < vals_.size() &&
           vals_[static_cast<std::size_t>(var)] >= 0;
}

bool Model::value(int var) const {
    if (!defined(var)) throw std::out_of_range("Model::value: variable not assigned");
    return vals_[static_cast<std::size_t>(var)] == 1;
}

CnfFormula::CnfFormula() {
    true_lit_ = new_lit();
    false_lit_ = new_lit();
    assert_lit(true_lit_);
    assert_lit(~false_lit_);
}

CnfFormula CnfFormula::raw() { return CnfFormula(RawTag{}); }

void CnfFormula::append_checked(const Lit* lits, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const int v = lits[i].var();
        if (v < 1 || v > var_count_)
            throw std::logic_error("clause references unallocated variable");
        arena_.push_back(lits[i].code);
    }
    arena_.push_back(0);
    ++clause_count_;
}

void CnfFormula::add_clause(const std::vector<Lit>& lits) {
    if (lits.empty()) throw std::logic_error("refusing implicit empty clause");
    append_checked(lits.data(), lits.size());
}

void CnfFormula::add_clause(std::initializer_list<Lit> lits) {
    if (lits.size() == 0) throw std::logic_error("refusing implicit empty clause");
    append_checked(lits.begin(), lits.size());
}

void CnfFormula::assert_false() {
    arena_.push_back(0);
    ++clause_count_;
}

void CnfFormula::write_dimacs(std::ostream& os) const {
    os << "p cnf " << var_count_ << " " << clause_count_ << "\n";
    for (std::size_t i = 0; i < arena_.size(); ++i) {
        os << arena_[i];
        os << (arena_[i] == 0 ? '\n' : ' ');
    }
}

void CnfFormula::write_dimacs_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_dimacs(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path);
}

CnfFormula parse_dimacs(std::istream& is) {
    CnfFormula f = CnfFormula::raw();
    std::string line;
    long declared_vars = -1;
    bool header_seen = false;
    std::vector<Lit> clause;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, cnf;
            long nv = 0, nc = 0;
            if (!(hs >> p >> cnf >> nv >> nc) || cnf != "cnf")
                throw std::runtime_error("malformed DIMACS header: " + line);
            declared_vars = nv;
            header_seen = true;
            while (f.var_count() < nv) f.new_var();
            continue;
        }
        if (!header_seen) throw std::runtime_error("DIMACS clause before header");
        std::istringstream ls(line);
        long code;
        while (ls >> code) {
            if (code == 0) {
                if (clause.empty())
                    f.assert_false();
                else
                    f.add_clause(clause);
                clause.clear();
            } else {
                if (std::abs(code) > declared_vars)
                    throw std::runtime_error("literal exceeds declared variable count");
                clause.push_back(Lit(static_cast<std::int32_t>(code)));
            }
        }
    }
    if (!clause.empty()) throw std::runtime_error("unterminated final clause");
    return f;
}

Model parse_model(const std::string& text) {
    Model m;
    std::istringstream is(text);
    std::string line;
    bool done = false;
    bool any = false;
    while (!done && std::getline(is, line)) {
        if (line.empty() || line[0] != 'v') continue;
        std::istringstream ls(line.substr(1));
        long code;
        while (ls >> code) {
            if (code == 0) { done = true; break; }
            any = true;
            m.set(static_cast<int>(std::abs(code)), code > 0);
        }
    }
    if (!any && !done) throw std::runtime_error("no model lines found in solver output");
    return m;
}

void exactly_one(CnfFormula& f, const std::vector<Lit>& xs) {
    if (xs.empty()) throw std::invalid_argument("exactly_one: empty literal set");
    f.add_clause(xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            f.add_clause({~xs[i], ~xs[j]});
}

void at_most_k(CnfFormula& f, const std::vector<Lit>& xs, int k) {
    if (k < 0) throw std::invalid_argument("at_most_k: negative bound");
    const int n = static_cast<int>(xs.size());
    if (k >= n) return;
    if (k == 0) {
        for (const Lit& x : xs) f.add_clause({~x});
        return;
    }
    // Sinz sequential counter: s(i,j) means "at least j of the first i are true".
    auto v = [&](int i) { return xs[static_cast<std::size_t>(i - 1)]; };
    std::vector<std::vector<Lit>> s(static_cast<std::size_t>(n));
    for (int i = 1; i <= n - 1; ++i) {
        s[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(k + 1));
        for (int j = 1; j <= k; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.new_lit();
    }
    auto reg = [&](int i, int j) { return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

    f.add_clause({~v(1), reg(1, 1)});
    for (int j = 2; j <= k; ++j) f.add_clause({~reg(1, j)});
    for (int i = 2; i <= n - 1; ++i) {
        f.add_clause({~v(i), reg(i, 1)});
        f.add_clause({~reg(i - 1, 1), reg(i, 1)});
        for (int j = 2; j <= k; ++j) {
            f.add_clause({~v(i), ~reg(i - 1, j - 1), reg(i, j)});
            f.add_clause({~reg(i - 1, j), reg(i, j)});
        }
        f.add_clause({~v(i), ~reg(i - 1, k)});
    }
    f.add_clause({~v(n), ~reg(n - 1, k)});
}

BitVec bv_fresh(CnfFormula& f, int width) {
    if (width < 1) throw std::invalid_argument("bv_fresh: width must be >= 1");
    BitVec x;
    x.bits.reserve(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) x.bits.push_back(f.new_lit());
    return x;
}

bool bv_const_fits(Int value, int width) {
    if (width >= 64) return true;
    const Int lo = -(Int(1) << (width - 1));
    const Int hi = (Int(1) << (width - 1)) - 1;
    return value >= lo && value <= hi;
}

BitVec bv_const(CnfFormula& f, Int value, int width) {
    if (width < 1) throw std::invalid_argument("bv_const: width must be >= 1");
    if (!bv_const_fits(value, width))
        throw std::invalid_argument("bv_const: value does not fit width");
    BitVec x;
    x.bits.reserve(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) {
        const bool bit = (value >> i) & 1;
        x.bits.push_back(bit ? f.lit_true() : f.lit_false());
    }
    return x;
}

namespace {

// Full adder bit: defines s = a ⊕ b ⊕ cin and cout = majority(a, b, cin).
void full_adder(CnfFormula& f, Lit a, Lit b, Lit cin, Lit s, Lit cout) {
    // carry: 6 clauses (conjunctive majority form and its dual)
    f.add_clause({~a, ~b, cout});
    f.add_clause({~a, ~cin, cout});
    f.add_clause({~b, ~cin, cout});
    f.add_clause({a, b, ~cout});
    f.add_clause({a, cin, ~cout});
    f.add_clause({b, cin, ~cout});
    // sum: odd-parity definition of s over {a, b, cin}
    f.add_clause({~s, a, b, cin});
    f.add_clause({~s, a, ~b, ~cin});
    f.add_clause({~s, ~a, b, ~cin});
    f.add_clause({~s, ~a, ~b, cin});
    f.add_clause({s, ~a, b, cin});
    f.add_clause({s, a, ~b, cin});
    f.add_clause({s, a, b, ~cin});
    f.add_clause({s, ~a, ~b, ~cin});
}

}  // namespace

BitVec bv_add(CnfFormula& f, const BitVec& x, const BitVec& y) {
    if (x.width() != y.width()) throw std::invalid_argument("bv_add: width mismatch");
    const int w = x.width();
    BitVec out;
    out.bits.reserve(static_cast<std::size_t>(w));
    Lit carry = f.lit_false();
    for (int t = 0; t < w; ++t) {
        const Lit s = f.new_lit();
        // Final carry is dropped: two's-complement wraparound.
        const Lit cout = (t + 1 < w) ? f.new_lit() : Lit();
        if (t + 1 < w) {
            full_adder(f, x.bits[static_cast<std::size_t>(t)], y.bits[static_cast<std::size_t>(t)], carry, s, cout);
        } else {
            const Lit a = x.bits[static_cast<std::size_t>(t)];
            const Lit b = y.bits[static_cast<std::size_t>(t)];
            f.add_clause({~s, a, b, carry});
            f.add_clause({~s, a, ~b, ~carry});
            f.add_clause({~s, ~a, b, ~carry});
            f.add_clause({~s, ~a, ~b, carry});
            f.add_clause({s, ~a, b, carry});
            f.add_clause({s, a, ~b, carry});
            f.add_clause({s, a, b, ~carry});
            f.add_clause({s, ~a, ~b, ~carry});
        }
        out.bits.push_back(s);
        carry = cout;
    }
    return out;
}

BitVec bv_neg(CnfFormula& f, const BitVec& x) {
    BitVec comp;
    comp.bits.reserve(static_cast<std::size_t>(x.width()));
    for (const Lit& b : x.bits) comp.bits.push_back(~b);
    // Raw +1 bit pattern; bv_const would reject it at width 1.
    BitVec one;
    one.bits.push_back(f.lit_true());
    for (int i = 1; i < x.width(); ++i) one.bits.push_back(f.lit_false());
    return bv_add(f, comp, one);
}

BitVec bv_shl1(CnfFormula& f, const BitVec& x) {
    BitVec out;
    out.bits.reserve(static_cast<std::size_t>(x.width()) + 1);
    out.bits.push_back(f.lit_false());
    out.bits.insert(out.bits.end(), x.bits.begin(), x.bits.end());
    return out;
}

BitVec bv_sign_extend(const BitVec& x, int new_width) {
    if (new_width < x.width())
        throw std::invalid_argument("bv_sign_extend: shrinking not allowed");
    BitVec out = x;
    while (out.width() < new_width) out.bits.push_back(x.msb());
    return out;
}

BitVec bv_resize(const BitVec& x, int new_width) {
    if (new_width < 1) throw std::invalid_argument("bv_resize: width must be >= 1");
    if (new_width >= x.width()) return bv_sign_extend(x, new_width);
    BitVec out;
    out.bits.assign(x.bits.begin(), x.bits.begin() + new_width);
    return out;
}

BitVec bv_mul_const(CnfFormula& f, const BitVec& x, Int factor, int out_width) {
    if (factor == 0) return bv_const(f, 0, out_width);
    const bool negative = factor < 0;
    unsigned long long mag = negative ? static_cast<unsigned long long>(-(factor + 1)) + 1ULL
                                      : static_cast<unsigned long long>(factor);
    BitVec acc;
    bool first = true;
    for (int p = 0; p < 63 && (mag >> p) != 0; ++p) {
        if (!((mag >> p) & 1ULL)) continue;
        BitVec term = x;
        for (int s = 0; s < p; ++s) term = bv_shl1(f, term);
        term = bv_resize(term, out_width);
        if (first) {
            acc = term;
            first = false;
        } else {
            acc = bv_add(f, acc, term);
        }
    }
    if (negative) acc = bv_neg(f, acc);
    return acc;
}

void conditional_equal(CnfFormula& f, Lit guard, const BitVec& x, const BitVec& y) {
    if (x.width() != y.width())
        throw std::invalid_argument("conditional_equal: width mismatch");
    for (int t = 0; t < x.width(); ++t) {
        const Lit a = x.bits[static_cast<std::size_t>(t)];
        const Lit b = y.bits[static_cast<std::size_t>(t)];
        f.add_clause({~guard, a, ~b});
        f.add_clause({~guard, ~a, b});
    }
}

void conditional_equal_const(CnfFormula& f, Lit guard, const BitVec& x, Int value) {
    if (!bv_const_fits(value, x.width()))
        throw std::invalid_argument("conditional_equal_const: value does not fit width");
    for (int t = 0; t < x.width(); ++t) {
        const bool bit = (value >> t) & 1;
        const Lit a = x.bits[static_cast<std::size_t>(t)];
        f.add_clause({~guard, bit ? a : ~a});
    }
}

void assert_equal_const(CnfFormula& f, const BitVec& x, Int value) {
    if (!bv_const_fits(value, x.width()))
        throw std::invalid_argument("assert_equal_const: value does not fit width");
    for (int t = 0; t < x.width(); ++t) {
        const bool bit = (value >> t) & 1;
        const Lit a = x.bits[static_cast<std::size_t>(t)];
        f.add_clause({bit ? a : ~a});
    }
}

Int bv_value(const BitVec& x, const Model& m) {
    Int v = 0;
    for (int t = 0; t < x.width(); ++t)
        if (m.lit_true(x.bits[static_cast<std::size_t>(t)])) v |= (Int(1) << t);
    if (x.width() < 64 && m.lit_true(x.msb())) v -= (Int(1) << x.width());
    return v;
}

}  // namespace gatesynth
