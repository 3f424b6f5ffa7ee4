// gatesynth-sat: self-contained CDCL SAT solver with the SAT-competition
// interface (DIMACS in, exit 10/20, "s"/"v" output lines). Used as the
// default backend for gatesynth; any conforming solver can replace it via
// --solver.
//
// Classic architecture: two-watched-literal propagation, first-UIP conflict
// analysis with local clause minimization, VSIDS branching with phase saving,
// Luby restarts, activity-based learnt clause reduction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

using std::int32_t;
using std::size_t;

// Literal encoding: lit = 2*var + sign, sign 1 = negated; var is 0-based.
inline int var_of(int lit) { return lit >> 1; }
inline bool sign_of(int lit) { return lit & 1; }
inline int neg(int lit) { return lit ^ 1; }
inline int from_dimacs(long code) {
    const int v = static_cast<int>(std::labs(code)) - 1;
    return 2 * v + (code < 0 ? 1 : 0);
}

constexpr signed char kUndef = -1;

// Clause arena. Layout per clause: [header, activity(float bits), lits...].
// header = (size << 2) | (learnt << 1) | deleted.
class Arena {
  public:
    int alloc(const std::vector<int>& lits, bool learnt) {
        const int ref = static_cast<int>(data_.size());
        data_.push_back((static_cast<int32_t>(lits.size()) << 2) | (learnt ? 2 : 0));
        data_.push_back(0);  // activity bits
        for (int l : lits) data_.push_back(l);
        return ref;
    }
    int size(int ref) const { return data_[static_cast<size_t>(ref)] >> 2; }
    bool learnt(int ref) const { return data_[static_cast<size_t>(ref)] & 2; }
    bool deleted(int ref) const { return data_[static_cast<size_t>(ref)] & 1; }
    void mark_deleted(int ref) { data_[static_cast<size_t>(ref)] |= 1; }
    int* lits(int ref) { return &data_[static_cast<size_t>(ref) + 2]; }
    const int* lits(int ref) const { return &data_[static_cast<size_t>(ref) + 2]; }
    float activity(int ref) const {
        float f;
        std::memcpy(&f, &data_[static_cast<size_t>(ref) + 1], sizeof(f));
        return f;
    }
    void set_activity(int ref, float f) {
        std::memcpy(&data_[static_cast<size_t>(ref) + 1], &f, sizeof(f));
    }
    size_t footprint() const { return data_.size(); }

    // Copy live clauses into a fresh arena; returns old-ref -> new-ref map.
    void compact(std::vector<int>& refs, std::vector<int>& reasons) {
        std::vector<int32_t> fresh;
        fresh.reserve(data_.size());
        std::vector<std::pair<int, int>> remap;
        for (int& ref : refs) {
            const int n = size(ref);
            const int nref = static_cast<int>(fresh.size());
            fresh.push_back(data_[static_cast<size_t>(ref)]);
            fresh.push_back(data_[static_cast<size_t>(ref) + 1]);
            for (int i = 0; i < n; ++i) fresh.push_back(lits(ref)[i]);
            remap.emplace_back(ref, nref);
            ref = nref;
        }
        std::sort(remap.begin(), remap.end());
        for (int& r : reasons) {
            if (r < 0) continue;
            const auto it = std::lower_bound(remap.begin(), remap.end(), std::make_pair(r, -1));
            r = (it != remap.end() && it->first == r) ? it->second : -1;
        }
        data_.swap(fresh);
    }

  private:
    std::vector<int32_t> data_;
};

struct Watcher {
    int cref;
    int blocker;
};

class Solver {
  public:
    bool parse(FILE* in);
    int solve();  // 10 = SAT, 20 = UNSAT
    void print_model(FILE* out) const;
    int num_vars() const { return nvars_; }

  private:
    int nvars_ = 0;
    Arena arena_;
    std::vector<int> clauses_;  // original clause refs
    std::vector<int> learnts_;
    std::vector<std::vector<Watcher>> watches_;  // indexed by literal
    std::vector<signed char> vals_;              // per var: -1/0/1
    std::vector<signed char> phase_;             // saved polarity
    std::vector<int> level_;
    std::vector<int> reason_;  // clause ref or -1
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    static constexpr double kVarDecay = 0.95;
    float cla_inc_ = 1.0f;
    static constexpr float kClaDecay = 0.999f;

    std::vector<int> heap_;      // binary max-heap of vars
    std::vector<int> heap_pos_;  // var -> heap index or -1

    std::vector<signed char> seen_;
    bool unsat_ = false;
    std::uint64_t conflicts_ = 0;
    double max_learnts_ = 0.0;

    signed char value(int lit) const {
        const signed char v = vals_[static_cast<size_t>(var_of(lit))];
        if (v == kUndef) return kUndef;
        return static_cast<signed char>(v ^ static_cast<signed char>(sign_of(lit)));
    }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void ensure_var(int v);
    void heap_insert(int v);
    int heap_pop();
    void heap_up(size_t i);
    void heap_down(size_t i);
    void bump_var(int v);
    void bump_clause(int ref);

    bool enqueue(int lit, int from);
    int propagate();
    void cancel_until(int lvl);
    void analyze(int confl, std::vector<int>& learnt, int& bt_level);
    void reduce_db();
    bool add_clause_lits(std::vector<int>& lits);
    void attach(int ref);
};

void Solver::ensure_var(int v) {
    while (nvars_ <= v) {
        vals_.push_back(kUndef);
        phase_.push_back(0);
        level_.push_back(0);
        reason_.push_back(-1);
        activity_.push_back(0.0);
        seen_.push_back(0);
        heap_pos_.push_back(-1);
        watches_.emplace_back();
        watches_.emplace_back();
        heap_insert(nvars_);
        ++nvars_;
    }
}

void Solver::heap_insert(int v) {
    if (heap_pos_[static_cast<size_t>(v)] >= 0) return;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
}

void Solver::heap_up(size_t i) {
    const int v = heap_[i];
    while (i > 0) {
        const size_t p = (i - 1) / 2;
        if (activity_[static_cast<size_t>(heap_[p])] >= activity_[static_cast<size_t>(v)]) break;
        heap_[i] = heap_[p];
        heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
        i = p;
    }
    heap_[i] = v;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(size_t i) {
    const int v = heap_[i];
    const size_t n = heap_.size();
    for (;;) {
        size_t c = 2 * i + 1;
        if (c >= n) break;
        if (c + 1 < n &&
            activity_[static_cast<size_t>(heap_[c + 1])] > activity_[static_cast<size_t>(heap_[c])])
            ++c;
        if (activity_[static_cast<size_t>(heap_[c])] <= activity_[static_cast<size_t>(v)]) break;
        heap_[i] = heap_[c];
        heap_pos_[static_cast<size_t>(heap_[i])] = static_cast<int>(i);
        i = c;
    }
    heap_[i] = v;
    heap_pos_[static_cast<size_t>(v)] = static_cast<int>(i);
}

int Solver::heap_pop() {
    const int v = heap_[0];
    heap_pos_[static_cast<size_t>(v)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[static_cast<size_t>(last)] = 0;
        heap_down(0);
    }
    return v;
}

void Solver::bump_var(int v) {
    activity_[static_cast<size_t>(v)] += var_inc_;
    if (activity_[static_cast<size_t>(v)] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    const int pos = heap_pos_[static_cast<size_t>(v)];
    if (pos >= 0) heap_up(static_cast<size_t>(pos));
}

void Solver::bump_clause(int ref) {
    float a = arena_.activity(ref) + cla_inc_;
    if (a > 1e20f) {
        for (int r : learnts_) arena_.set_activity(r, arena_.activity(r) * 1e-20f);
        cla_inc_ *= 1e-20f;
        a = arena_.activity(ref) + cla_inc_;
    }
    arena_.set_activity(ref, a);
}

bool Solver::enqueue(int lit, int from) {
    const signed char v = value(lit);
    if (v == 1) return true;
    if (v == 0) return false;
    vals_[static_cast<size_t>(var_of(lit))] = sign_of(lit) ? 0 : 1;
    level_[static_cast<size_t>(var_of(lit))] = decision_level();
    reason_[static_cast<size_t>(var_of(lit))] = from;
    trail_.push_back(lit);
    return true;
}

void Solver::attach(int ref) {
    const int* l = arena_.lits(ref);
    watches_[static_cast<size_t>(l[0])].push_back({ref, l[1]});
    watches_[static_cast<size_t>(l[1])].push_back({ref, l[0]});
}

// Returns conflicting clause ref or -1.
int Solver::propagate() {
    while (qhead_ < trail_.size()) {
        const int p = trail_[qhead_++];
        auto& ws = watches_[static_cast<size_t>(neg(p))];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            const Watcher w = ws[i];
            if (value(w.blocker) == 1) {
                ws[keep++] = w;
                continue;
            }
            const int ref = w.cref;
            int* lits = arena_.lits(ref);
            const int false_lit = neg(p);
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            if (value(lits[0]) == 1) {
                ws[keep++] = {ref, lits[0]};
                continue;
            }
            const int sz = arena_.size(ref);
            bool moved = false;
            for (int k = 2; k < sz; ++k) {
                if (value(lits[k]) != 0) {
                    std::swap(lits[1], lits[k]);
                    watches_[static_cast<size_t>(lits[1])].push_back({ref, lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Unit or conflicting.
            ws[keep++] = {ref, lits[0]};
            if (value(lits[0]) == 0) {
                // Conflict: keep the remaining watchers and report.
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                qhead_ = trail_.size();
                return ref;
            }
            enqueue(lits[0], ref);
        }
        ws.resize(keep);
    }
    return -1;
}

void Solver::cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    const size_t bound = static_cast<size_t>(trail_lim_[static_cast<size_t>(lvl)]);
    for (size_t i = trail_.size(); i-- > bound;) {
        const int v = var_of(trail_[i]);
        phase_[static_cast<size_t>(v)] = vals_[static_cast<size_t>(v)];
        vals_[static_cast<size_t>(v)] = kUndef;
        reason_[static_cast<size_t>(v)] = -1;
        heap_insert(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(static_cast<size_t>(lvl));
    qhead_ = trail_.size();
}

void Solver::analyze(int confl, std::vector<int>& learnt, int& bt_level) {
    learnt.clear();
    learnt.push_back(0);  // placeholder for the asserting literal
    int counter = 0;
    int p = -1;
    size_t index = trail_.size();
    std::vector<int> to_clear;

    do {
        if (arena_.learnt(confl)) bump_clause(confl);
        const int* lits = arena_.lits(confl);
        const int sz = arena_.size(confl);
        for (int k = 0; k < sz; ++k) {
            const int q = lits[k];
            // Skip the literal this reason clause implied (the true form of p).
            if (p != -1 && q == neg(p)) continue;
            const int v = var_of(q);
            if (!seen_[static_cast<size_t>(v)] && level_[static_cast<size_t>(v)] > 0) {
                seen_[static_cast<size_t>(v)] = 1;
                to_clear.push_back(v);
                bump_var(v);
                if (level_[static_cast<size_t>(v)] >= decision_level())
                    ++counter;
                else
                    learnt.push_back(q);
            }
        }
        while (!seen_[static_cast<size_t>(var_of(trail_[index - 1]))]) --index;
        p = neg(trail_[index - 1]);
        --index;
        seen_[static_cast<size_t>(var_of(p))] = 0;
        --counter;
        if (counter > 0) confl = reason_[static_cast<size_t>(var_of(p))];
    } while (counter > 0);
    learnt[0] = p;

    // Local minimization: drop literals whose whole reason is already in the
    // clause (or at level 0).
    size_t kept = 1;
    for (size_t i = 1; i < learnt.size(); ++i) {
        const int v = var_of(learnt[i]);
        const int r = reason_[static_cast<size_t>(v)];
        bool redundant = false;
        if (r >= 0) {
            redundant = true;
            const int* rl = arena_.lits(r);
            const int rs = arena_.size(r);
            for (int k = 0; k < rs; ++k) {
                const int rv = var_of(rl[k]);
                if (rv == v) continue;
                if (!seen_[static_cast<size_t>(rv)] && level_[static_cast<size_t>(rv)] > 0) {
                    redundant = false;
                    break;
                }
            }
        }
        if (!redundant) learnt[kept++] = learnt[i];
    }
    learnt.resize(kept);

    bt_level = 0;
    if (learnt.size() > 1) {
        size_t max_i = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[static_cast<size_t>(var_of(learnt[i]))] >
                level_[static_cast<size_t>(var_of(learnt[max_i]))])
                max_i = i;
        std::swap(learnt[1], learnt[max_i]);
        bt_level = level_[static_cast<size_t>(var_of(learnt[1]))];
    }

    for (int v : to_clear) seen_[static_cast<size_t>(v)] = 0;
}

void Solver::reduce_db() {
    std::sort(learnts_.begin(), learnts_.end(), [&](int a, int b) {
        return arena_.activity(a) < arena_.activity(b);
    });
    const size_t target = learnts_.size() / 2;
    size_t removed = 0, kept = 0;
    for (size_t i = 0; i < learnts_.size(); ++i) {
        const int ref = learnts_[i];
        bool is_locked = false;
        const int v0 = var_of(arena_.lits(ref)[0]);
        if (reason_[static_cast<size_t>(v0)] == ref && vals_[static_cast<size_t>(v0)] != kUndef)
            is_locked = true;
        if (removed < target && !is_locked && arena_.size(ref) > 2) {
            arena_.mark_deleted(ref);
            ++removed;
        } else {
            learnts_[kept++] = ref;
        }
    }
    learnts_.resize(kept);

    // Rebuild watches over live clauses; compact the arena.
    std::vector<int> all;
    all.reserve(clauses_.size() + learnts_.size());
    for (int r : clauses_) all.push_back(r);
    for (int r : learnts_) all.push_back(r);
    arena_.compact(all, reason_);
    size_t idx = 0;
    for (int& r : clauses_) r = all[idx++];
    for (int& r : learnts_) r = all[idx++];
    for (auto& w : watches_) w.clear();
    for (int r : clauses_) attach(r);
    for (int r : learnts_) attach(r);
}

bool Solver::add_clause_lits(std::vector<int>& lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i + 1] == neg(lits[i])) return true;  // tautology
    std::vector<int> kept;
    for (int l : lits) {
        const signed char v = value(l);
        if (v == 1) return true;  // satisfied at level 0
        if (v == kUndef) kept.push_back(l);
    }
    if (kept.empty()) {
        unsat_ = true;
        return false;
    }
    if (kept.size() == 1) {
        if (!enqueue(kept[0], -1)) unsat_ = true;
        return !unsat_;
    }
    const int ref = arena_.alloc(kept, false);
    clauses_.push_back(ref);
    attach(ref);
    return true;
}

bool Solver::parse(FILE* in) {
    char buf[1 << 16];
    std::string token;
    long declared_vars = -1, declared_clauses = -1;
    std::vector<int> lits;
    bool in_comment = false, have_header = false;
    long current = 0;
    bool in_number = false, negative = false, any_digit = false;

    auto flush_number = [&]() {
        if (!in_number) return true;
        const long code = negative ? -current : current;
        in_number = false;
        current = 0;
        negative = false;
        if (!any_digit) return false;
        any_digit = false;
        if (!have_header) return false;
        if (code == 0) {
            const bool ok = add_clause_lits(lits);
            lits.clear();
            return ok || true;  // continue parsing even if level-0 UNSAT
        }
        ensure_var(static_cast<int>(std::labs(code)) - 1);
        lits.push_back(from_dimacs(code));
        return true;
    };

    size_t got;
    std::string header_line;
    bool reading_header = false;
    while ((got = fread(buf, 1, sizeof(buf), in)) > 0) {
        for (size_t i = 0; i < got; ++i) {
            const char ch = buf[i];
            if (in_comment) {
                if (ch == '\n') in_comment = false;
                continue;
            }
            if (reading_header) {
                if (ch == '\n') {
                    reading_header = false;
                    long nv = 0, nc = 0;
                    if (sscanf(header_line.c_str(), " cnf %ld %ld", &nv, &nc) != 2) return false;
                    declared_vars = nv;
                    declared_clauses = nc;
                    (void)declared_clauses;
                    ensure_var(static_cast<int>(nv) - 1);
                    have_header = true;
                } else {
                    header_line.push_back(ch);
                }
                continue;
            }
            if (ch == 'c' && !in_number) {
                in_comment = true;
                continue;
            }
            if (ch == 'p' && !have_header) {
                reading_header = true;
                header_line.clear();
                continue;
            }
            if (ch == '-') {
                in_number = true;
                negative = true;
                continue;
            }
            if (ch >= '0' && ch <= '9') {
                in_number = true;
                any_digit = true;
                current = current * 10 + (ch - '0');
                continue;
            }
            if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
                if (in_number && !flush_number()) return false;
                continue;
            }
            return false;  // unexpected character
        }
    }
    if (reading_header) {
        long nv = 0, nc = 0;
        if (sscanf(header_line.c_str(), " cnf %ld %ld", &nv, &nc) != 2) return false;
        (void)nc;
        declared_vars = nv;
        ensure_var(static_cast<int>(nv) - 1);
        have_header = true;
    }
    if (in_number && !flush_number()) return false;
    if (!lits.empty()) return false;  // unterminated clause
    if (declared_vars >= 0) ensure_var(static_cast<int>(declared_vars) - 1);
    return have_header || nvars_ == 0;
}

int Solver::solve() {
    if (unsat_) return 20;
    if (propagate() != -1) return 20;

    max_learnts_ = 4000.0 + 0.3 * static_cast<double>(clauses_.size());
    std::vector<int> learnt;
    int restarts = 0;

    auto luby = [](int x) {
        int size = 1, seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) >> 1;
            --seq;
            x = x % size;
        }
        return std::pow(2.0, seq);
    };

    for (;;) {
        std::uint64_t budget = static_cast<std::uint64_t>(luby(restarts) * 100.0);
        std::uint64_t local_conflicts = 0;
        for (;;) {
            const int confl = propagate();
            if (confl != -1) {
                ++conflicts_;
                ++local_conflicts;
                if (decision_level() == 0) return 20;
                int bt = 0;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    const int ref = arena_.alloc(learnt, true);
                    learnts_.push_back(ref);
                    arena_.set_activity(ref, 0.0f);
                    bump_clause(ref);
                    attach(ref);
                    enqueue(learnt[0], ref);
                }
                var_inc_ /= kVarDecay;
                cla_inc_ /= kClaDecay;
            } else {
                if (local_conflicts >= budget) {
                    cancel_until(0);
                    ++restarts;
                    break;
                }
                if (static_cast<double>(learnts_.size()) >= max_learnts_) {
                    reduce_db();
                    max_learnts_ *= 1.3;
                }
                int next = -1;
                while (!heap_.empty()) {
                    const int v = heap_pop();
                    if (vals_[static_cast<size_t>(v)] == kUndef) {
                        next = v;
                        break;
                    }
                }
                if (next == -1) {
                    bool all = true;
                    for (int v = 0; v < nvars_ && all; ++v)
                        if (vals_[static_cast<size_t>(v)] == kUndef) {
                            next = v;
                            all = false;
                        }
                    if (all) return 10;
                }
                trail_lim_.push_back(static_cast<int>(trail_.size()));
                const int lit = 2 * next + (phase_[static_cast<size_t>(next)] == 1 ? 0 : 1);
                enqueue(lit, -1);
            }
        }
    }
}

void Solver::print_model(FILE* out) const {
    std::string line = "v";
    for (int v = 0; v < nvars_; ++v) {
        const bool tv = vals_[static_cast<size_t>(v)] == 1;
        line += ' ';
        line += std::to_string(tv ? (v + 1) : -(v + 1));
        if (line.size() > 100) {
            fputs(line.c_str(), out);
            fputc('\n', out);
            line = "v";
        }
    }
    line += " 0";
    fputs(line.c_str(), out);
    fputc('\n', out);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2 || std::strcmp(argv[1], "-h") == 0 || std::strcmp(argv[1], "--help") == 0) {
        fprintf(stderr, "usage: %s <file.cnf>\n", argv[0]);
        fprintf(stderr, "exit codes: 10 satisfiable, 20 unsatisfiable, 1 error\n");
        return 1;
    }
    FILE* in = fopen(argv[1], "rb");
    if (!in) {
        fprintf(stderr, "cannot open %s\n", argv[1]);
        return 1;
    }
    Solver solver;
    const bool ok = solver.parse(in);
    fclose(in);
    if (!ok) {
        printf("c parse error\n");
        fprintf(stderr, "parse error in %s\n", argv[1]);
        return 1;
    }
    printf("c gatesynth-sat\n");
    const int code = solver.solve();
    if (code == 10) {
        printf("s SATISFIABLE\n");
        solver.print_model(stdout);
    } else {
        printf("s UNSATISFIABLE\n");
    }
    fflush(stdout);
    return code;
}
