#pragma once

// Shared test plumbing: the bundled solver location, scratch directories,
// float-matrix helpers for cross-checks.

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gatesynth/ring.hpp"
#include "gatesynth/search.hpp"
#include "gatesynth/solve.hpp"

#ifndef GATESYNTH_SAT_BIN
#define GATESYNTH_SAT_BIN "gatesynth-sat"
#endif
#ifndef GATESYNTH_CLI_BIN
#define GATESYNTH_CLI_BIN "gatesynth"
#endif

namespace gatesynth::testing {

inline std::string solver_path() {
    if (const char* env = std::getenv("GATESYNTH_SOLVER")) return env;
    return GATESYNTH_SAT_BIN;
}

inline std::string cli_path() { return GATESYNTH_CLI_BIN; }

class ScratchDir {
  public:
    explicit ScratchDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("gatesynth-test-" + tag + "-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline SearchOptions default_search_options(const std::filesystem::path& artifacts, int d_max) {
    SearchOptions opts;
    opts.d_max = d_max;
    opts.solver = SolverConfig::validated(solver_path());
    opts.artifact_dir = artifacts.string();
    opts.log = nullptr;
    return opts;
}

// --- float-side helpers (independent cross-check route) ---

using CMat = std::vector<std::vector<std::complex<double>>>;

inline CMat to_cmat(const ScaledMatrix& m) {
    CMat out(static_cast<std::size_t>(m.rows()),
             std::vector<std::complex<double>>(static_cast<std::size_t>(m.cols())));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                to_complex(m.at(r, c), m.scale());
    return out;
}

inline CMat cmat_mul(const CMat& a, const CMat& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    CMat out(n, std::vector<std::complex<double>>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    return out;
}

inline CMat cmat_kron(const CMat& a, const CMat& b) {
    const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    CMat out(ar * br, std::vector<std::complex<double>>(ac * bc));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t p = 0; p < br; ++p)
                for (std::size_t q = 0; q < bc; ++q)
                    out[i * br + p][j * bc + q] = a[i][j] * b[p][q];
    return out;
}

inline double cmat_max_abs_diff(const CMat& a, const CMat& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j)
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

inline RingElem random_ring_elem(std::mt19937_64& rng, Int lo = -1000, Int hi = 1000) {
    std::uniform_int_distribution<Int> dist(lo, hi);
    return RingElem{dist(rng), dist(rng), dist(rng), dist(rng)};
}

}  // namespace gatesynth::testing
