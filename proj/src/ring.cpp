#include "gatesynth/ring.hpp"

#include <cmath>
#include <sstream>

namespace gatesynth {

std::string RingElem::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << "," << d << ")";
    return os.str();
}

RingElem ring_mul(const RingElem& u, const RingElem& v) {
    // (a + bi + c√2 + di√2)(a' + b'i + c'√2 + d'i√2), expanded over the basis.
    const Int a = checked_add(checked_sub(checked_mul(u.a, v.a), checked_mul(u.b, v.b)),
                              checked_mul(2, checked_sub(checked_mul(u.c, v.c),
                                                         checked_mul(u.d, v.d))));
    const Int b = checked_add(checked_add(checked_mul(u.a, v.b), checked_mul(u.b, v.a)),
                              checked_mul(2, checked_add(checked_mul(u.c, v.d),
                                                         checked_mul(u.d, v.c))));
    const Int c = checked_sub(checked_add(checked_mul(u.a, v.c), checked_mul(u.c, v.a)),
                              checked_add(checked_mul(u.b, v.d), checked_mul(u.d, v.b)));
    const Int d = checked_add(checked_add(checked_mul(u.c, v.b), checked_mul(u.a, v.d)),
                              checked_add(checked_mul(u.b, v.c), checked_mul(u.d, v.a)));
    return {a, b, c, d};
}

Int norm_sq(const RingElem& u) {
    const Int aa = checked_mul(u.a, u.a);
    const Int bb = checked_mul(u.b, u.b);
    const Int cc = checked_mul(u.c, u.c);
    const Int dd = checked_mul(u.d, u.d);
    return checked_add(checked_add(aa, bb),
                       checked_mul(2, checked_add(cc, dd)));
}

std::complex<double> to_complex(const RingElem& u, int scale) {
    static const double kSqrt2 = std::sqrt(2.0);
    const double s = std::ldexp(1.0, -scale);
    const double re = (static_cast<double>(u.a) + kSqrt2 * static_cast<double>(u.c)) * s;
    const double im = (static_cast<double>(u.b) + kSqrt2 * static_cast<double>(u.d)) * s;
    return {re, im};
}

ScaledRing phase_factor(int k) {
    if (k < 0 || k >= 8) throw std::domain_error("phase_factor: k must be in 0..7");
    switch (k) {
        case 0: return ScaledRing({1, 0, 0, 0}, 0);
        case 1: return ScaledRing({0, 0, 1, 1}, 1);   // (√2 + i√2)/2
        case 2: return ScaledRing({0, 1, 0, 0}, 0);
        case 3: return ScaledRing({0, 0, -1, 1}, 1);
        case 4: return ScaledRing({-1, 0, 0, 0}, 0);
        case 5: return ScaledRing({0, 0, -1, -1}, 1);
        case 6: return ScaledRing({0, -1, 0, 0}, 0);
        default: return ScaledRing({0, 0, 1, -1}, 1);
    }
}

std::optional<RingElem> rescale_to(const ScaledRing& entry, int k) {
    const ScaledRing e = entry.canonicalized();
    if (k < e.scale) return std::nullopt;
    RingElem v = e.value;
    for (int i = e.scale; i < k; ++i)
        v = {checked_mul(v.a, 2), checked_mul(v.b, 2), checked_mul(v.c, 2), checked_mul(v.d, 2)};
    return v;
}

ScaledMatrix ScaledMatrix::dagger() const {
    ScaledMatrix r(cols_, rows_, scale_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j).conj();
    return r;
}

bool ScaledMatrix::is_diagonal_constant(const RingElem& diag) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? diag : RingElem::zero())) return false;
    return true;
}

ScaledMatrix ScaledMatrix::canonicalized() const {
    ScaledMatrix r = *this;
    while (r.scale_ > 0) {
        bool all_even = true;
        for (const RingElem& e : r.entries_)
            if (!e.all_even()) { all_even = false; break; }
        if (!all_even) break;
        for (RingElem& e : r.entries_) e = e.half();
        --r.scale_;
    }
    return r;
}

ScaledMatrix scaled_mat_mul(const ScaledMatrix& a, const ScaledMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("scaled_mat_mul: dimension mismatch");
    ScaledMatrix r(a.rows(), b.cols(), a.scale() + b.scale());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const RingElem& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const RingElem& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                r.at(i, j) = ring_add(r.at(i, j), ring_mul(aik, bkj));
            }
        }
    }
    return r;
}

ScaledMatrix tensor(const ScaledMatrix& a, const ScaledMatrix& b) {
    ScaledMatrix r(a.rows() * b.rows(), a.cols() * b.cols(), a.scale() + b.scale());
    for (int ra = 0; ra < a.rows(); ++ra)
        for (int ca = 0; ca < a.cols(); ++ca) {
            const RingElem& e = a.at(ra, ca);
            if (e.is_zero()) continue;
            for (int rb = 0; rb < b.rows(); ++rb)
                for (int cb = 0; cb < b.cols(); ++cb) {
                    const RingElem& f = b.at(rb, cb);
                    if (f.is_zero()) continue;
                    r.at(ra * b.rows() + rb, ca * b.cols() + cb) = ring_mul(e, f);
                }
        }
    return r;
}

}  // namespace gatesynth
