#include "gatesynth/verify.hpp"

#include <sstream>
#include <stdexcept>

namespace gatesynth {

std::string VerificationReport::describe() const {
    std::ostringstream os;
    if (pass) {
        os << "pass (phase multiple " << phase_multiple << ")";
    } else {
        os << "fail";
        if (first_mismatch)
            os << ": first mismatch at (" << first_mismatch->row << ", " << first_mismatch->col
               << "): expected " << first_mismatch->expected.str() << ", got "
               << first_mismatch->got.str();
    }
    return os.str();
}

ScaledMatrix simulate_exact(const Circuit& circuit, const GateSet& gate_set) {
    if (circuit.n != gate_set.n)
        throw std::invalid_argument("simulate_exact: qubit count mismatch");
    ScaledMatrix acc = ScaledMatrix::identity(1 << circuit.n, 0);
    for (int j : circuit.steps) {
        if (j < 0 || j >= gate_set.size())
            throw std::invalid_argument("simulate_exact: gate index out of range");
        acc = scaled_mat_mul(gate_set[j].expanded, acc);
    }
    return acc;
}

namespace {

// Apply the exact scaled product to a constant column vector.
std::vector<RingElem> apply_matrix(const ScaledMatrix& m, const std::vector<RingElem>& v) {
    std::vector<RingElem> out(static_cast<std::size_t>(m.rows()), RingElem::zero());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            const RingElem& e = m.at(r, c);
            if (e.is_zero()) continue;
            const RingElem& x = v[static_cast<std::size_t>(c)];
            if (x.is_zero()) continue;
            out[static_cast<std::size_t>(r)] =
                ring_add(out[static_cast<std::size_t>(r)], ring_mul(e, x));
        }
    return out;
}

bool check_phase(const ScaledMatrix& sim, const TargetSpec& target, int k,
                 std::optional<Mismatch>& mismatch) {
    const int d = sim.scale();
    const ScaledRing phase = phase_factor(k);
    if (target.kind == TargetSpec::Kind::Matrix) {
        for (int c = 0; c < target.dim(); ++c) {
            if (!target.keep_col[static_cast<std::size_t>(c)]) continue;
            for (int r = 0; r < target.dim(); ++r) {
                const ScaledRing entry(target.matrix.at(r, c), target.matrix.scale());
                const auto want = rescale_to(scaled_mul(phase, entry), d);
                if (!want || *want != sim.at(r, c)) {
                    mismatch = Mismatch{r, c, want ? *want : RingElem::zero(), sim.at(r, c)};
                    return false;
                }
            }
        }
        return true;
    }
    for (std::size_t s = 0; s < target.pairs.size(); ++s) {
        const StatePair& pr = target.pairs[s];
        std::vector<RingElem> in(static_cast<std::size_t>(target.dim()));
        for (int r = 0; r < target.dim(); ++r) in[static_cast<std::size_t>(r)] = pr.input.at(r, 0);
        const std::vector<RingElem> got = apply_matrix(sim, in);
        const int scale_goal = d + pr.input.scale();
        for (int r = 0; r < target.dim(); ++r) {
            const ScaledRing entry(pr.output.at(r, 0), pr.output.scale());
            const auto want = rescale_to(scaled_mul(phase, entry), scale_goal);
            if (!want || *want != got[static_cast<std::size_t>(r)]) {
                mismatch = Mismatch{r, static_cast<int>(s),
                                    want ? *want : RingElem::zero(),
                                    got[static_cast<std::size_t>(r)]};
                return false;
            }
        }
    }
    return true;
}

}  // namespace

VerificationReport check_implements(const Circuit& circuit, const GateSet& gate_set,
                                    const TargetSpec& target,
                                    const std::vector<int>& phase_multiples) {
    if (phase_multiples.empty())
        throw std::invalid_argument("check_implements: empty phase set");
    const ScaledMatrix sim = simulate_exact(circuit, gate_set);
    VerificationReport report;
    for (int k : phase_multiples) {
        std::optional<Mismatch> mismatch;
        if (check_phase(sim, target, k, mismatch)) {
            report.pass = true;
            report.phase_multiple = k;
            report.first_mismatch.reset();
            return report;
        }
        report.first_mismatch = mismatch;
    }
    report.pass = false;
    return report;
}

}  // namespace gatesynth
