#include "gatesynth/gates.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gatesynth {

const char* gate_name_str(GateName name) {
    switch (name) {
        case GateName::X: return "X";
        case GateName::Y: return "Y";
        case GateName::Z: return "Z";
        case GateName::H: return "H";
        case GateName::S: return "S";
        case GateName::Sdg: return "Sdg";
        case GateName::T: return "T";
        case GateName::Tdg: return "Tdg";
        case GateName::CNOT: return "CNOT";
        case GateName::CZ: return "CZ";
        case GateName::TOFFOLI: return "TOFFOLI";
    }
    return "?";
}

std::optional<GateName> parse_gate_name(const std::string& s) {
    static const std::map<std::string, GateName> table = {
        {"X", GateName::X},       {"Y", GateName::Y},
        {"Z", GateName::Z},       {"H", GateName::H},
        {"S", GateName::S},       {"Sdg", GateName::Sdg},
        {"T", GateName::T},       {"Tdg", GateName::Tdg},
        {"CNOT", GateName::CNOT}, {"CX", GateName::CNOT},
        {"CZ", GateName::CZ},     {"TOFFOLI", GateName::TOFFOLI},
        {"CCX", GateName::TOFFOLI}};
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

namespace {

ScaledMatrix diag2(RingElem d0, RingElem d1) {
    ScaledMatrix m(2, 2, 1);
    m.at(0, 0) = d0;
    m.at(1, 1) = d1;
    return m;
}

ScaledMatrix permutation_doubled(const std::vector<int>& image) {
    const int dim = static_cast<int>(image.size());
    ScaledMatrix m(dim, dim, 1);
    for (int c = 0; c < dim; ++c) m.at(image[static_cast<std::size_t>(c)], c) = {2, 0, 0, 0};
    return m;
}

GatePrim make_prim(GateName name, int arity, ScaledMatrix doubled, int symmetric_prefix = 1) {
    // Exact unitarity: (2G)(2G)† = 4I.
    const ScaledMatrix prod = scaled_mat_mul(doubled, doubled.dagger());
    if (!prod.is_diagonal_constant({4, 0, 0, 0}))
        throw std::logic_error(std::string("gate primitive is not unitary: ") +
                               gate_name_str(name));
    return GatePrim{name, arity, std::move(doubled), symmetric_prefix};
}

std::vector<GatePrim> build_prims() {
    std::vector<GatePrim> prims;
    // 1-qubit
    {
        ScaledMatrix x(2, 2, 1);
        x.at(0, 1) = {2, 0, 0, 0};
        x.at(1, 0) = {2, 0, 0, 0};
        prims.push_back(make_prim(GateName::X, 1, x));

        ScaledMatrix y(2, 2, 1);
        y.at(0, 1) = {0, -2, 0, 0};
        y.at(1, 0) = {0, 2, 0, 0};
        prims.push_back(make_prim(GateName::Y, 1, y));

        prims.push_back(make_prim(GateName::Z, 1, diag2({2, 0, 0, 0}, {-2, 0, 0, 0})));

        ScaledMatrix h(2, 2, 1);
        h.at(0, 0) = {0, 0, 1, 0};
        h.at(0, 1) = {0, 0, 1, 0};
        h.at(1, 0) = {0, 0, 1, 0};
        h.at(1, 1) = {0, 0, -1, 0};
        prims.push_back(make_prim(GateName::H, 1, h));

        prims.push_back(make_prim(GateName::S, 1, diag2({2, 0, 0, 0}, {0, 2, 0, 0})));
        prims.push_back(make_prim(GateName::Sdg, 1, diag2({2, 0, 0, 0}, {0, -2, 0, 0})));
        prims.push_back(make_prim(GateName::T, 1, diag2({2, 0, 0, 0}, {0, 0, 1, 1})));
        prims.push_back(make_prim(GateName::Tdg, 1, diag2({2, 0, 0, 0}, {0, 0, 1, -1})));
    }
    // 2-qubit; operand 0 is the control and the most significant bit.
    prims.push_back(make_prim(GateName::CNOT, 2, permutation_doubled({0, 1, 3, 2})));
    {
        ScaledMatrix cz(4, 4, 1);
        cz.at(0, 0) = {2, 0, 0, 0};
        cz.at(1, 1) = {2, 0, 0, 0};
        cz.at(2, 2) = {2, 0, 0, 0};
        cz.at(3, 3) = {-2, 0, 0, 0};
        prims.push_back(make_prim(GateName::CZ, 2, cz, /*symmetric_prefix=*/2));
    }
    // 3-qubit; operands 0,1 are the controls.
    prims.push_back(make_prim(GateName::TOFFOLI, 3,
                              permutation_doubled({0, 1, 2, 3, 4, 5, 7, 6}),
                              /*symmetric_prefix=*/2));
    return prims;
}

}  // namespace

const GatePrim& builtin_prim(GateName name) {
    static const std::vector<GatePrim> prims = build_prims();
    for (const GatePrim& p : prims)
        if (p.name == name) return p;
    throw std::logic_error("unknown gate primitive");
}

std::string Gate::display() const {
    std::ostringstream os;
    os << gate_name_str(name) << " ";
    for (std::size_t i = 0; i < operands.size(); ++i) {
        if (i) os << ",";
        os << "q" << operands[i];
    }
    return os.str();
}

ScaledMatrix expand_to_n(const GatePrim& prim, const std::vector<int>& operands, int n) {
    if (static_cast<int>(operands.size()) != prim.arity)
        throw std::invalid_argument("expand_to_n: operand count does not match arity");
    std::set<int> distinct(operands.begin(), operands.end());
    if (static_cast<int>(distinct.size()) != prim.arity)
        throw std::invalid_argument("expand_to_n: duplicate operands");
    for (int q : operands)
        if (q < 0 || q >= n) throw std::invalid_argument("expand_to_n: operand out of range");

    const int dim = 1 << n;
    ScaledMatrix m(dim, dim, 1);
    // Qubit q occupies bit (n-1-q) of a basis index; operands[0] is the
    // primitive's own most significant qubit.
    std::vector<int> opbit(operands.size());
    for (std::size_t k = 0; k < operands.size(); ++k) opbit[k] = n - 1 - operands[k];
    int rest_mask = dim - 1;
    for (int b : opbit) rest_mask &= ~(1 << b);

    const int pdim = 1 << prim.arity;
    for (int r = 0; r < dim; ++r) {
        int rop = 0;
        for (std::size_t k = 0; k < opbit.size(); ++k)
            rop |= ((r >> opbit[k]) & 1) << (prim.arity - 1 - static_cast<int>(k));
        for (int cop = 0; cop < pdim; ++cop) {
            const RingElem& e = prim.doubled_matrix.at(rop, cop);
            if (e.is_zero()) continue;
            int c = r & rest_mask;
            for (std::size_t k = 0; k < opbit.size(); ++k)
                c |= ((cop >> (prim.arity - 1 - static_cast<int>(k))) & 1) << opbit[k];
            m.at(r, c) = e;
        }
    }
    return m;
}

Gate make_gate(GateName name, const std::vector<int>& operands, int n) {
    const GatePrim& prim = builtin_prim(name);
    Gate g;
    g.name = name;
    g.operands = operands;
    g.expanded = expand_to_n(prim, operands, n);
    const int dim = 1 << n;
    g.row_nonzeros.resize(static_cast<std::size_t>(dim));
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const RingElem& e = g.expanded.at(r, c);
            if (!e.is_zero()) g.row_nonzeros[static_cast<std::size_t>(r)].emplace_back(c, e);
        }
    return g;
}

bool Connectivity::permits(const std::vector<int>& operands) const {
    if (operands.size() == 1) {
        if (!restricts_single_qubit()) return true;
        for (const auto& t : allowed)
            if (t.size() == 1 && t[0] == operands[0]) return true;
        return false;
    }
    for (const auto& t : allowed)
        if (t == operands) return true;
    return false;
}

bool Connectivity::restricts_single_qubit() const {
    for (const auto& t : allowed)
        if (t.size() == 1) return true;
    return false;
}

namespace {

void enumerate_tuples(int n, int arity, int symmetric_prefix,
                      std::vector<std::vector<int>>& out) {
    std::vector<int> tuple(static_cast<std::size_t>(arity));
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == arity) {
            out.push_back(tuple);
            return;
        }
        for (int q = 0; q < n; ++q) {
            if (used[static_cast<std::size_t>(q)]) continue;
            // Keep interchangeable leading operands sorted.
            if (pos > 0 && pos < symmetric_prefix && q < tuple[static_cast<std::size_t>(pos - 1)])
                continue;
            used[static_cast<std::size_t>(q)] = true;
            tuple[static_cast<std::size_t>(pos)] = q;
            self(self, pos + 1);
            used[static_cast<std::size_t>(q)] = false;
        }
    };
    rec(rec, 0);
}

}  // namespace

GateSet build_gate_set(int n, const std::vector<GateName>& prims,
                       const std::optional<Connectivity>& connectivity) {
    if (n < 1) throw std::invalid_argument("build_gate_set: n must be >= 1");
    GateSet gs;
    gs.n = n;
    for (GateName name : prims) {
        const GatePrim& prim = builtin_prim(name);
        if (prim.arity > n) continue;
        std::vector<std::vector<int>> tuples;
        enumerate_tuples(n, prim.arity, prim.symmetric_prefix, tuples);
        std::sort(tuples.begin(), tuples.end());
        for (const auto& t : tuples) {
            if (connectivity && !connectivity->permits(t)) continue;
            Gate g = make_gate(name, t, n);
            bool duplicate = false;
            for (const Gate& prev : gs.gates)
                if (prev.expanded == g.expanded) { duplicate = true; break; }
            if (!duplicate) gs.gates.push_back(std::move(g));
        }
    }
    if (gs.gates.empty()) throw std::invalid_argument("build_gate_set: empty gate set");
    return gs;
}

std::vector<int> GateSet::indices_of(const std::vector<GateName>& prims) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
        for (GateName p : prims)
            if (gates[static_cast<std::size_t>(j)].name == p) {
                out.push_back(j);
                break;
            }
    return out;
}

namespace {

bool is_single_nonzero_allowed(const RingElem& e) {
    // ±2, ±2i, ±√2 ± i√2
    if (e == RingElem{2, 0, 0, 0} || e == RingElem{-2, 0, 0, 0}) return true;
    if (e == RingElem{0, 2, 0, 0} || e == RingElem{0, -2, 0, 0}) return true;
    if (e.a == 0 && e.b == 0 && (e.c == 1 || e.c == -1) && (e.d == 1 || e.d == -1)) return true;
    return false;
}

bool is_pair_nonzero_allowed(const RingElem& e) {
    // ±√2, ±i√2, ±1 ± i
    if (e.a == 0 && e.b == 0) {
        if ((e.c == 1 || e.c == -1) && e.d == 0) return true;
        if (e.c == 0 && (e.d == 1 || e.d == -1)) return true;
        return false;
    }
    if ((e.a == 1 || e.a == -1) && (e.b == 1 || e.b == -1) && e.c == 0 && e.d == 0) return true;
    return false;
}

}  // namespace

std::optional<BoundViolation> validate_gate_for_bound(const Gate& g) {
    const int dim = g.expanded.rows();
    for (int r = 0; r < dim; ++r) {
        const auto& nz = g.row_nonzeros[static_cast<std::size_t>(r)];
        if (nz.size() == 1) {
            if (!is_single_nonzero_allowed(nz[0].second))
                return BoundViolation{r, nz[0].first, nz[0].second,
                                      "single nonzero outside {±2, ±2i, ±√2±i√2}"};
        } else if (nz.size() == 2) {
            for (const auto& [c, e] : nz)
                if (!is_pair_nonzero_allowed(e))
                    return BoundViolation{r, c, e,
                                          "paired nonzero outside {±√2, ±i√2, ±1±i}"};
        } else {
            return BoundViolation{r, -1, RingElem::zero(),
                                  "row has " + std::to_string(nz.size()) +
                                      " nonzero entries (expected 1 or 2)"};
        }
    }
    return std::nullopt;
}

}  // namespace gatesynth
