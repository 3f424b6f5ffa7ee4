#include "gatesynth/solve.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gatesynth {

namespace {

bool is_executable_file(const std::string& path) {
    struct stat st{};
    if (stat(path.c_str(), &st) != 0) return false;
    if (!S_ISREG(st.st_mode)) return false;
    return access(path.c_str(), X_OK) == 0;
}

std::optional<std::string> resolve_executable(const std::string& name) {
    if (name.find('/') != std::string::npos)
        return is_executable_file(name) ? std::optional<std::string>(name) : std::nullopt;
    const char* path_env = std::getenv("PATH");
    if (!path_env) return std::nullopt;
    std::istringstream is(path_env);
    std::string dir;
    while (std::getline(is, dir, ':')) {
        if (dir.empty()) continue;
        const std::string candidate = dir + "/" + name;
        if (is_executable_file(candidate)) return candidate;
    }
    return std::nullopt;
}

std::string read_file_head(const std::string& path, std::size_t max_bytes = 512) {
    std::ifstream is(path);
    if (!is) return {};
    std::string content(max_bytes, '\0');
    is.read(content.data(), static_cast<std::streamsize>(max_bytes));
    content.resize(static_cast<std::size_t>(is.gcount()));
    return content;
}

}  // namespace

SolverConfig SolverConfig::validated(const std::string& executable,
                                     std::vector<std::string> extra_args,
                                     std::optional<double> timeout_seconds) {
    const auto resolved = resolve_executable(executable);
    if (!resolved)
        throw std::invalid_argument("solver executable not found or not runnable: " + executable);
    SolverConfig cfg;
    cfg.executable = *resolved;
    cfg.extra_args = std::move(extra_args);
    cfg.timeout_seconds = timeout_seconds;
    return cfg;
}

RawSolve run_solver(const SolverConfig& cfg, const std::string& dimacs_path,
                    const std::string& output_path, const std::function<bool()>& cancel) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    RawSolve result;

    if (access(dimacs_path.c_str(), R_OK) != 0) {
        result.detail = "DIMACS file not readable: " + dimacs_path;
        return result;
    }

    const pid_t pid = fork();
    if (pid < 0) {
        result.detail = std::string("fork failed: ") + std::strerror(errno);
        return result;
    }
    if (pid == 0) {
        setpgid(0, 0);  // own process group so cleanup reaps helpers too
        const int fd = open(output_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (fd < 0) _exit(127);
        dup2(fd, STDOUT_FILENO);
        close(fd);
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(cfg.executable.c_str()));
        for (const std::string& a : cfg.extra_args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(const_cast<char*>(dimacs_path.c_str()));
        argv.push_back(nullptr);
        execv(cfg.executable.c_str(), argv.data());
        _exit(127);
    }

    setpgid(pid, pid);  // mirrored in the child; whichever runs first wins
    bool killed = false;
    double killed_at = 0.0;
    std::string kill_reason;
    int status = 0;
    for (;;) {
        const pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) break;
        if (r < 0) {
            result.detail = std::string("waitpid failed: ") + std::strerror(errno);
            return result;
        }
        const double elapsed =
            std::chrono::duration<double>(clock::now() - start).count();
        if (!killed && cfg.timeout_seconds && elapsed > *cfg.timeout_seconds) {
            kill(-pid, SIGTERM);
            killed = true;
            killed_at = elapsed;
            kill_reason = "timeout after " + std::to_string(*cfg.timeout_seconds) + "s";
        } else if (!killed && cancel && cancel()) {
            kill(-pid, SIGTERM);
            killed = true;
            killed_at = elapsed;
            kill_reason = "cancelled";
        } else if (killed && elapsed > killed_at + 2.0) {
            kill(-pid, SIGKILL);
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    result.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (killed) kill(-pid, SIGKILL);  // sweep any helper processes left behind

    if (killed) {
        result.verdict = RawVerdict::Timeout;
        result.detail = kill_reason;
        return result;
    }
    if (!WIFEXITED(status)) {
        result.verdict = RawVerdict::Error;
        result.detail = "solver terminated abnormally";
        return result;
    }
    const int code = WEXITSTATUS(status);
    if (code == 20) {
        result.verdict = RawVerdict::Unsat;
        return result;
    }
    if (code == 10) {
        std::ifstream is(output_path);
        std::stringstream buffer;
        buffer << is.rdbuf();
        try {
            result.model = parse_model(buffer.str());
        } catch (const std::exception& e) {
            result.verdict = RawVerdict::Error;
            result.detail = std::string("SAT exit but model unreadable: ") + e.what();
            return result;
        }
        result.verdict = RawVerdict::Sat;
        return result;
    }
    result.verdict = RawVerdict::Error;
    result.detail = "unexpected solver exit code " + std::to_string(code) + "; output starts: " +
                    read_file_head(output_path);
    return result;
}

const char* outcome_kind_str(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Sat: return "SAT";
        case OutcomeKind::Unsat: return "UNSAT";
        case OutcomeKind::Infeasible: return "INFEASIBLE";
        case OutcomeKind::SolverError: return "SOLVER_ERROR";
        case OutcomeKind::Timeout: return "TIMEOUT";
    }
    return "?";
}

std::pair<Circuit, int> decode_circuit(const Model& model, const VarMap& vars, int n) {
    Circuit circuit;
    circuit.n = n;
    for (int i = 0; i < vars.depth(); ++i) {
        int chosen = -1;
        for (int j = 0; j < vars.gate_count(); ++j) {
            if (model.lit_true(Lit::pos(vars.selector_var(i, j)))) {
                if (chosen >= 0)
                    throw std::logic_error("decode_circuit: multiple selected gates at step " +
                                           std::to_string(i));
                chosen = j;
            }
        }
        if (chosen < 0)
            throw std::logic_error("decode_circuit: no selected gate at step " +
                                   std::to_string(i));
        circuit.steps.push_back(chosen);
    }
    int phase = vars.encoded_phases().size() == 1 ? vars.encoded_phases()[0] : -1;
    if (vars.encoded_phases().size() > 1) {
        for (int k : vars.encoded_phases()) {
            if (model.lit_true(Lit::pos(vars.phase_selector_var(k)))) {
                if (phase >= 0)
                    throw std::logic_error("decode_circuit: multiple selected phase multiples");
                phase = k;
            }
        }
        if (phase < 0) throw std::logic_error("decode_circuit: no selected phase multiple");
    }
    return {circuit, phase};
}

}  // namespace gatesynth
