#include "gatesynth/encode.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace gatesynth {

int bit_width(int step_index, WidthPolicy policy, const std::vector<int>& width_override) {
    if (step_index < 0) throw std::invalid_argument("bit_width: negative step");
    const int applied = step_index + 1;  // the product after step i holds i+1 gates
    switch (policy) {
        case WidthPolicy::Theorem1:
            return static_cast<int>((3LL * applied + 1) / 2) + 2;
        case WidthPolicy::Tight:
            return applied + 2;
        case WidthPolicy::Override:
            if (static_cast<std::size_t>(step_index) >= width_override.size())
                throw std::invalid_argument("bit_width: override list shorter than depth");
            return width_override[static_cast<std::size_t>(step_index)];
    }
    throw std::logic_error("bit_width: unknown policy");
}

const BitVec& VarMap::coeff(int step, int row, int col, int comp) const {
    if (states_mode_) throw std::logic_error("VarMap::coeff: instance is in state-mapping mode");
    const int t = col_index_[static_cast<std::size_t>(col)];
    if (t < 0) throw std::out_of_range("VarMap::coeff: column is masked");
    return coeff_[static_cast<std::size_t>(step)]
                 [static_cast<std::size_t>((t * rows_ + row) * 4 + comp)];
}

const BitVec& VarMap::coeff_state(int step, int pair, int row, int comp) const {
    if (!states_mode_) throw std::logic_error("VarMap::coeff_state: instance is in matrix mode");
    return coeff_[static_cast<std::size_t>(step)]
                 [static_cast<std::size_t>((pair * rows_ + row) * 4 + comp)];
}

namespace {

// Contribution of the constant kappa times a tracked entry, one output
// component at a time: list of (source component, integer factor) pairs,
// read off the ring product formula.
std::array<std::array<Int, 4>, 4> component_factors(const RingElem& k) {
    return {{
        {{k.a, -k.b, 2 * k.c, -2 * k.d}},  // out a
        {{k.b, k.a, 2 * k.d, 2 * k.c}},    // out b
        {{k.c, -k.d, k.a, -k.b}},          // out c
        {{k.d, k.c, k.b, k.a}},            // out d
    }};
}

struct TrackedColumn {
    std::vector<RingElem> input;  // exact input vector (basis column or state)
    int extra_width = 0;          // widening for non-unit input norms
    // Final target coefficients per encoded phase multiple.
    std::array<std::vector<RingElem>, 8> final_consts;
};

int extra_width_for(const std::vector<RingElem>& input) {
    Int max_norm = 1;
    for (const RingElem& e : input) max_norm = std::max(max_norm, norm_sq(e));
    int extra = 0;
    while ((Int(1) << (2 * extra)) < max_norm) ++extra;
    return extra;
}

}  // namespace

class Encoder {
  public:
    explicit Encoder(const SynthesisProblem& p) : p_(p), gs_(*p.gate_set) {
        if (p_.gate_set == nullptr) throw std::invalid_argument("encode: null gate set");
        if (p_.depth < 1) throw std::invalid_argument("encode: depth must be >= 1");
        if (p_.depth > 40)
            throw std::invalid_argument("encode: depth > 40 exceeds 64-bit coefficient headroom");
        d_ = p_.depth;
        g_ = gs_.size();
        dim_ = 1 << p_.target.n;
        if (gs_.n != p_.target.n)
            throw std::invalid_argument("encode: gate set and target qubit counts differ");
        for (int k : p_.phase_multiples)
            if (k < 0 || k > 7)
                throw std::invalid_argument("encode: phase multiple outside 0..7");
        if (p_.phase_multiples.empty())
            throw std::invalid_argument("encode: empty phase multiple set");
        if (p_.width_policy != WidthPolicy::Override) {
            for (int j = 0; j < g_; ++j)
                if (auto v = validate_gate_for_bound(gs_[j])) {
                    std::ostringstream os;
                    os << "gate " << gs_[j].display() << " violates the bounded-coefficient "
                       << "structure at row " << v->row << " (entry " << v->entry.str() << "): "
                       << v->message << "; supply explicit bit widths to encode it anyway";
                    throw std::invalid_argument(os.str());
                }
        }
        widths_.resize(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i)
            widths_[static_cast<std::size_t>(i)] = bit_width(i, p_.width_policy, p_.width_override);
        build_tracked_columns();
    }

    std::vector<int> run_precheck(std::string* reason) {
        std::vector<int> feasible;
        std::ostringstream why;
        for (int k : p_.phase_multiples) {
            std::string detail;
            if (phase_feasible(k, detail)) {
                feasible.push_back(k);
            } else {
                if (why.tellp() > 0) why << "; ";
                why << "phase " << k << ": " << detail;
            }
        }
        if (reason) *reason = why.str();
        return feasible;
    }

    EncodeOutcome run() {
        std::string reason;
        std::vector<int> phases = run_precheck(&reason);
        if (phases.empty())
            return Infeasibility{"no requested phase multiple admits ring coefficients at "
                                 "scale 2^d with in-range components (" + reason + ")"};
        vm_.d_ = d_;
        vm_.g_ = g_;
        vm_.rows_ = dim_;
        vm_.states_mode_ = p_.target.kind == TargetSpec::Kind::States;
        vm_.tracked_ = static_cast<int>(cols_.size());
        vm_.encoded_phases_ = phases;
        vm_.col_index_ = col_index_;

        alloc_selectors(phases);
        alloc_coeffs();
        encode_step0();
        encode_transitions();
        encode_final(phases);
        encode_type_bounds();

        EncodedInstance inst;
        inst.stats.variables = f_.var_count();
        inst.stats.clauses = f_.clause_count();
        inst.stats.widths = widths_;
        inst.vars = std::move(vm_);
        inst.formula = std::move(f_);
        return inst;
    }

  private:
    const SynthesisProblem& p_;
    const GateSet& gs_;
    int d_ = 0, g_ = 0, dim_ = 0;
    CnfFormula f_;
    VarMap vm_;
    std::vector<TrackedColumn> cols_;
    std::vector<int> col_index_;  // matrix mode: column -> tracked slot
    std::vector<int> kept_cols_;
    std::vector<int> widths_;

    void build_tracked_columns() {
        col_index_.assign(static_cast<std::size_t>(dim_), -1);
        if (p_.target.kind == TargetSpec::Kind::Matrix) {
            kept_cols_ = p_.target.kept_columns();
            for (int c : kept_cols_) {
                col_index_[static_cast<std::size_t>(c)] = static_cast<int>(cols_.size());
                TrackedColumn tc;
                tc.input.assign(static_cast<std::size_t>(dim_), RingElem::zero());
                tc.input[static_cast<std::size_t>(c)] = RingElem::one();
                tc.extra_width = 0;
                cols_.push_back(std::move(tc));
            }
            if (cols_.empty()) throw std::invalid_argument("encode: all target columns masked");
        } else {
            for (const StatePair& pr : p_.target.pairs) {
                TrackedColumn tc;
                tc.input.reserve(static_cast<std::size_t>(dim_));
                for (int r = 0; r < dim_; ++r) tc.input.push_back(pr.input.at(r, 0));
                tc.extra_width = extra_width_for(tc.input);
                cols_.push_back(std::move(tc));
            }
        }
    }

    int width_at(int step, const TrackedColumn& tc) const {
        return widths_[static_cast<std::size_t>(step)] + tc.extra_width;
    }

    // Fills final_consts for phase k on success.
    bool phase_feasible(int k, std::string& detail) {
        const ScaledRing phase = phase_factor(k);
        bool ok = true;
        for (std::size_t t = 0; t < cols_.size() && ok; ++t) {
            TrackedColumn& tc = cols_[t];
            std::vector<RingElem> consts(static_cast<std::size_t>(dim_));
            for (int r = 0; r < dim_ && ok; ++r) {
                ScaledRing entry;
                int scale_goal;
                if (p_.target.kind == TargetSpec::Kind::Matrix) {
                    const int c = kept_cols_[t];
                    entry = ScaledRing(p_.target.matrix.at(r, c), p_.target.matrix.scale());
                    scale_goal = d_;
                } else {
                    const StatePair& pr = p_.target.pairs[t];
                    entry = ScaledRing(pr.output.at(r, 0), pr.output.scale());
                    scale_goal = d_ + pr.input.scale();
                }
                const auto rescaled = rescale_to(scaled_mul(phase, entry), scale_goal);
                if (!rescaled) {
                    detail = "entry at row " + std::to_string(r) +
                             " is not in Z[sqrt2,i] at scale 2^" + std::to_string(scale_goal);
                    ok = false;
                    break;
                }
                const int w = width_at(d_ - 1, tc);
                for (Int comp : rescaled->components())
                    if (!bv_const_fits(comp, w)) {
                        detail = "coefficient " + std::to_string(comp) + " at row " +
                                 std::to_string(r) + " exceeds the step-" +
                                 std::to_string(d_ - 1) + " width bound";
                        ok = false;
                        break;
                    }
                if (ok) consts[static_cast<std::size_t>(r)] = *rescaled;
            }
            if (ok) tc.final_consts[static_cast<std::size_t>(k)] = std::move(consts);
        }
        return ok;
    }

    void alloc_selectors(const std::vector<int>& phases) {
        vm_.selector_.assign(static_cast<std::size_t>(d_), std::vector<int>());
        for (int i = 0; i < d_; ++i) {
            auto& row = vm_.selector_[static_cast<std::size_t>(i)];
            row.reserve(static_cast<std::size_t>(g_));
            std::vector<Lit> lits;
            for (int j = 0; j < g_; ++j) {
                const int v = f_.new_var();
                row.push_back(v);
                lits.push_back(Lit::pos(v));
            }
            exactly_one(f_, lits);
        }
        vm_.phase_selector_.fill(0);
        if (phases.size() > 1) {
            std::vector<Lit> lits;
            for (int k : phases) {
                const int v = f_.new_var();
                vm_.phase_selector_[static_cast<std::size_t>(k)] = v;
                lits.push_back(Lit::pos(v));
            }
            exactly_one(f_, lits);
        }
    }

    void alloc_coeffs() {
        vm_.coeff_.assign(static_cast<std::size_t>(d_), std::vector<BitVec>());
        for (int i = 0; i < d_; ++i) {
            auto& layer = vm_.coeff_[static_cast<std::size_t>(i)];
            layer.reserve(cols_.size() * static_cast<std::size_t>(dim_) * 4);
            for (const TrackedColumn& tc : cols_) {
                const int w = width_at(i, tc);
                for (int r = 0; r < dim_; ++r)
                    for (int comp = 0; comp < 4; ++comp) layer.push_back(bv_fresh(f_, w));
            }
        }
    }

    BitVec& coeff_at(int step, int track, int row, int comp) {
        return vm_.coeff_[static_cast<std::size_t>(step)]
                         [static_cast<std::size_t>((track * dim_ + row) * 4 + comp)];
    }

    void encode_step0() {
        for (int j = 0; j < g_; ++j) {
            const Gate& gate = gs_[j];
            const Lit guard = Lit::pos(vm_.selector_var(0, j));
            for (std::size_t t = 0; t < cols_.size(); ++t) {
                const TrackedColumn& tc = cols_[t];
                for (int r = 0; r < dim_; ++r) {
                    // Constant fold: the first product applies the gate to the
                    // constant input column.
                    RingElem init = RingElem::zero();
                    for (const auto& [m, kappa] : gate.row_nonzeros[static_cast<std::size_t>(r)]) {
                        const RingElem& in = tc.input[static_cast<std::size_t>(m)];
                        if (!in.is_zero()) init = ring_add(init, ring_mul(kappa, in));
                    }
                    for (int comp = 0; comp < 4; ++comp) {
                        const Int value = init.components()[static_cast<std::size_t>(comp)];
                        conditional_equal_const(
                            f_, guard, coeff_at(0, static_cast<int>(t), r, comp), value);
                    }
                }
            }
        }
    }

    void encode_transitions() {
        for (int i = 0; i + 1 < d_; ++i) {
            for (std::size_t t = 0; t < cols_.size(); ++t) {
                const TrackedColumn& tc = cols_[t];
                const int w_out = width_at(i + 1, tc);
                // Product components kappa * entry(m), shared across gates.
                std::map<std::tuple<int, Int, Int, Int, Int, int>, BitVec> memo;
                auto product_component = [&](int m, const RingElem& kappa, int comp) -> const BitVec& {
                    const auto key = std::make_tuple(m, kappa.a, kappa.b, kappa.c, kappa.d, comp);
                    auto it = memo.find(key);
                    if (it != memo.end()) return it->second;
                    const auto factors = component_factors(kappa)[static_cast<std::size_t>(comp)];
                    BitVec acc;
                    bool first = true;
                    for (int src = 0; src < 4; ++src) {
                        const Int fac = factors[static_cast<std::size_t>(src)];
                        if (fac == 0) continue;
                        BitVec term = bv_mul_const(
                            f_, coeff_at(i, static_cast<int>(t), m, src), fac, w_out);
                        if (first) {
                            acc = std::move(term);
                            first = false;
                        } else {
                            acc = bv_add(f_, acc, term);
                        }
                    }
                    if (first) acc = bv_const(f_, 0, w_out);
                    return memo.emplace(key, std::move(acc)).first->second;
                };

                for (int j = 0; j < g_; ++j) {
                    const Gate& gate = gs_[j];
                    const Lit guard = Lit::pos(vm_.selector_var(i + 1, j));
                    for (int r = 0; r < dim_; ++r) {
                        const auto& nz = gate.row_nonzeros[static_cast<std::size_t>(r)];
                        for (int comp = 0; comp < 4; ++comp) {
                            const BitVec& out = coeff_at(i + 1, static_cast<int>(t), r, comp);
                            if (nz.empty()) {
                                conditional_equal_const(f_, guard, out, 0);
                            } else if (nz.size() == 1) {
                                conditional_equal(
                                    f_, guard, out,
                                    product_component(nz[0].first, nz[0].second, comp));
                            } else {
                                BitVec sum = product_component(nz[0].first, nz[0].second, comp);
                                for (std::size_t q = 1; q < nz.size(); ++q)
                                    sum = bv_add(f_, sum,
                                                 product_component(nz[q].first, nz[q].second, comp));
                                conditional_equal(f_, guard, out, sum);
                            }
                        }
                    }
                }
            }
        }
    }

    void encode_final(const std::vector<int>& phases) {
        for (std::size_t t = 0; t < cols_.size(); ++t) {
            const TrackedColumn& tc = cols_[t];
            for (int r = 0; r < dim_; ++r)
                for (int comp = 0; comp < 4; ++comp) {
                    const BitVec& bits = coeff_at(d_ - 1, static_cast<int>(t), r, comp);
                    if (phases.size() == 1) {
                        const RingElem& v =
                            tc.final_consts[static_cast<std::size_t>(phases[0])]
                                           [static_cast<std::size_t>(r)];
                        assert_equal_const(f_, bits, v.components()[static_cast<std::size_t>(comp)]);
                    } else {
                        for (int k : phases) {
                            const Lit guard = Lit::pos(vm_.phase_selector_var(k));
                            const RingElem& v = tc.final_consts[static_cast<std::size_t>(k)]
                                                               [static_cast<std::size_t>(r)];
                            conditional_equal_const(
                                f_, guard, bits, v.components()[static_cast<std::size_t>(comp)]);
                        }
                    }
                }
        }
    }

    void encode_type_bounds() {
        for (const TypeBound& tb : p_.type_bounds) {
            if (tb.gate_indices.empty())
                throw std::invalid_argument("encode: empty gate subset in type bound");
            std::vector<Lit> lits;
            for (int i = 0; i < d_; ++i)
                for (int j : tb.gate_indices) {
                    if (j < 0 || j >= g_)
                        throw std::invalid_argument("encode: type bound gate index out of range");
                    lits.push_back(Lit::pos(vm_.selector_var(i, j)));
                }
            at_most_k(f_, lits, tb.max_count);
        }
    }
};

std::vector<int> feasible_phases(const SynthesisProblem& p, std::string* reason) {
    Encoder enc(p);
    return enc.run_precheck(reason);
}

EncodeOutcome encode_instance(const SynthesisProblem& p) {
    Encoder enc(p);
    return enc.run();
}

EncodeOutcome encode_state_mapping(const std::vector<StatePair>& pairs, int n,
                                   const GateSet& gate_set, int depth,
                                   const std::vector<int>& phase_multiples,
                                   const std::vector<TypeBound>& type_bounds,
                                   WidthPolicy policy,
                                   const std::vector<int>& width_override) {
    SynthesisProblem p;
    p.target = TargetSpec::from_states(n, pairs);
    p.gate_set = &gate_set;
    p.depth = depth;
    p.phase_multiples = phase_multiples;
    p.type_bounds = type_bounds;
    p.width_policy = policy;
    p.width_override = width_override;
    return encode_instance(p);
}

}  // namespace gatesynth
