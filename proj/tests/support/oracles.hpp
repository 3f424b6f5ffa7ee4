#pragma once

// Brute-force BFS oracles over gate words. These establish expected minima
// independently of the SAT pipeline.

#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "gatesynth/gates.hpp"
#include "gatesynth/reversible.hpp"
#include "gatesynth/ring.hpp"

namespace gatesynth::testing {

inline std::string matrix_key(const ScaledMatrix& m) {
    const ScaledMatrix c = m.canonicalized();
    std::ostringstream os;
    os << c.scale() << "|";
    for (int r = 0; r < c.rows(); ++r)
        for (int j = 0; j < c.cols(); ++j) os << c.at(r, j).str();
    return os.str();
}

struct BfsEntry {
    int depth = 0;
    std::vector<int> word;       // gate indices, step 0 first
    ScaledMatrix canonical;
};

/// Minimal word length per reachable unitary (exact equality, no phase),
/// breadth-first over words up to max_len.
inline std::map<std::string, BfsEntry> bfs_unitaries(const GateSet& gs, int max_len) {
    std::map<std::string, BfsEntry> dist;
    std::vector<std::pair<ScaledMatrix, std::vector<int>>> frontier;
    const ScaledMatrix id = ScaledMatrix::identity(1 << gs.n, 0);
    dist.emplace(matrix_key(id), BfsEntry{0, {}, id});
    frontier.emplace_back(id, std::vector<int>{});
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::pair<ScaledMatrix, std::vector<int>>> next;
        for (const auto& [mat, word] : frontier) {
            for (int j = 0; j < gs.size(); ++j) {
                ScaledMatrix prod = scaled_mat_mul(gs[j].expanded, mat);
                std::vector<int> w = word;
                w.push_back(j);
                const std::string key = matrix_key(prod);
                if (dist.count(key)) continue;
                BfsEntry e{len, w, prod.canonicalized()};
                dist.emplace(key, e);
                next.emplace_back(std::move(prod), std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return dist;
}

/// Minimal count of `type` gates over all words of length <= max_len that
/// implement the target exactly; -1 when unreachable.
inline int bfs_min_type_count(const GateSet& gs, const ScaledMatrix& target, int max_len,
                              const std::vector<int>& type_indices) {
    const std::string target_key = matrix_key(target);
    int best = -1;
    std::vector<std::pair<ScaledMatrix, int>> frontier;  // matrix, type count so far
    frontier.emplace_back(ScaledMatrix::identity(1 << gs.n, 0), 0);
    if (matrix_key(frontier[0].first) == target_key) return 0;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::pair<ScaledMatrix, int>> next;
        for (const auto& [mat, count] : frontier) {
            for (int j = 0; j < gs.size(); ++j) {
                const bool typed =
                    std::find(type_indices.begin(), type_indices.end(), j) != type_indices.end();
                ScaledMatrix prod = scaled_mat_mul(gs[j].expanded, mat);
                const int c = count + (typed ? 1 : 0);
                if (matrix_key(prod) == target_key && (best < 0 || c < best)) best = c;
                next.emplace_back(std::move(prod), c);
            }
        }
        frontier = std::move(next);
    }
    return best;
}

/// Minimal word length mapping the exact input vector to the exact output
/// vector (vectors as 2^n x 1 ScaledMatrix); -1 when unreachable.
inline int bfs_state_min_depth(const GateSet& gs, const ScaledMatrix& input,
                               const ScaledMatrix& output, int max_len) {
    const std::string goal = matrix_key(output);
    std::map<std::string, int> dist;
    std::vector<ScaledMatrix> frontier{input};
    dist[matrix_key(input)] = 0;
    if (matrix_key(input) == goal) return 0;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<ScaledMatrix> next;
        for (const ScaledMatrix& v : frontier) {
            for (int j = 0; j < gs.size(); ++j) {
                ScaledMatrix w = scaled_mat_mul(gs[j].expanded, v);
                const std::string key = matrix_key(w);
                if (dist.count(key)) continue;
                dist[key] = len;
                if (key == goal) return len;
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return -1;
}

/// Minimal word length realizing the (possibly partial) truth table; -1 when
/// none exists within max_len. BFS over joint states of all specified rows.
inline int bfs_reversible_min_depth(const ReversibleGateSet& gs, const TruthTableSpec& spec,
                                    int max_len) {
    auto matches = [&](const std::vector<std::uint32_t>& states) {
        for (std::size_t t = 0; t < spec.rows.size(); ++t)
            if ((states[t] & spec.rows[t].care_mask) !=
                (spec.rows[t].output & spec.rows[t].care_mask))
                return false;
        return true;
    };
    std::vector<std::uint32_t> start;
    for (const TruthTableRow& r : spec.rows) start.push_back(r.input);
    if (matches(start)) return 0;
    std::map<std::vector<std::uint32_t>, int> dist;
    dist[start] = 0;
    std::queue<std::vector<std::uint32_t>> queue;
    queue.push(start);
    while (!queue.empty()) {
        const auto states = queue.front();
        queue.pop();
        const int d = dist[states];
        if (d == max_len) continue;
        for (std::size_t j = 0; j < gs.size(); ++j) {
            std::vector<std::uint32_t> next;
            next.reserve(states.size());
            for (std::uint32_t s : states) next.push_back(apply_reversible(gs[j], s));
            if (matches(next)) return d + 1;
            if (!dist.count(next)) {
                dist[next] = d + 1;
                queue.push(next);
            }
        }
    }
    return -1;
}

}  // namespace gatesynth::testing
