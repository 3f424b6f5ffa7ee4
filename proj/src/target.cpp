#include "gatesynth/target.hpp"

#include <stdexcept>

namespace gatesynth {

namespace {

int log2_exact(int dim) {
    int n = 0;
    while ((1 << n) < dim) ++n;
    if ((1 << n) != dim)
        throw std::invalid_argument("matrix dimension is not a power of two");
    return n;
}

}  // namespace

TargetSpec TargetSpec::from_matrix(ScaledMatrix m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("target matrix must be square");
    TargetSpec t;
    t.kind = Kind::Matrix;
    t.n = log2_exact(m.rows());
    t.keep_col.assign(static_cast<std::size_t>(m.cols()), 1);
    t.matrix = std::move(m);
    return t;
}

TargetSpec TargetSpec::from_states(int n, std::vector<StatePair> pairs) {
    if (n < 1) throw std::invalid_argument("state mapping needs n >= 1");
    if (pairs.empty()) throw std::invalid_argument("state mapping needs at least one pair");
    const int dim = 1 << n;
    for (const StatePair& p : pairs) {
        if (p.input.rows() != dim || p.input.cols() != 1 ||
            p.output.rows() != dim || p.output.cols() != 1)
            throw std::invalid_argument("state vector length mismatch");
    }
    TargetSpec t;
    t.kind = Kind::States;
    t.n = n;
    t.pairs = std::move(pairs);
    return t;
}

std::vector<int> TargetSpec::kept_columns() const {
    std::vector<int> cols;
    for (int c = 0; c < dim(); ++c)
        if (keep_col[static_cast<std::size_t>(c)]) cols.push_back(c);
    return cols;
}

TargetSpec TargetSpec::with_dirty_ancillas(int count) const {
    if (kind != Kind::Matrix)
        throw std::invalid_argument("ancillas apply to matrix targets");
    if (count < 1) return *this;
    TargetSpec t = from_matrix(tensor(matrix, ScaledMatrix::identity(1 << count)));
    // Replicate an existing mask across the ancilla block.
    for (int c = 0; c < t.dim(); ++c)
        t.keep_col[static_cast<std::size_t>(c)] = keep_col[static_cast<std::size_t>(c >> count)];
    return t;
}

TargetSpec TargetSpec::with_clean_ancillas(int count) const {
    if (count < 1) return *this;
    TargetSpec t = with_dirty_ancillas(count);
    const int low_mask = (1 << count) - 1;
    for (int c = 0; c < t.dim(); ++c)
        if ((c & low_mask) != 0) t.keep_col[static_cast<std::size_t>(c)] = 0;
    return t;
}

TargetSpec mask_columns(const TargetSpec& t, const std::vector<int>& kept) {
    if (t.kind != TargetSpec::Kind::Matrix)
        throw std::invalid_argument("mask_columns applies to matrix targets");
    TargetSpec out = t;
    out.keep_col.assign(static_cast<std::size_t>(t.dim()), 0);
    for (int c : kept) {
        if (c < 0 || c >= t.dim())
            throw std::invalid_argument("mask_columns: column out of range");
        out.keep_col[static_cast<std::size_t>(c)] = 1;
    }
    if (out.kept_columns().empty())
        throw std::invalid_argument("mask_columns: all columns masked");
    return out;
}

TargetSpec mask_columns_clean(const TargetSpec& t, const std::vector<int>& clean_qubits) {
    if (t.kind != TargetSpec::Kind::Matrix)
        throw std::invalid_argument("mask_columns_clean applies to matrix targets");
    TargetSpec out = t;
    for (int q : clean_qubits) {
        if (q < 0 || q >= t.n)
            throw std::invalid_argument("mask_columns_clean: qubit out of range");
        const int bit = t.n - 1 - q;
        for (int c = 0; c < t.dim(); ++c)
            if ((c >> bit) & 1) out.keep_col[static_cast<std::size_t>(c)] = 0;
    }
    if (out.kept_columns().empty())
        throw std::invalid_argument("mask_columns_clean: all columns masked");
    return out;
}

}  // namespace gatesynth
