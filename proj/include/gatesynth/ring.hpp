#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatesynth {

using Int = std::int64_t;

/// Thrown whenever an exact integer operation would wrap.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

inline Int checked_add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r))
        throw OverflowError("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int x, Int y) {
    Int r;
    if (__builtin_sub_overflow(x, y, &r))
        throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int x, Int y) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r))
        throw OverflowError("integer overflow in multiplication");
    return r;
}

/**
 * Element of Z[√2, i]: a + b·i + c·√2 + d·i√2 with integer coefficients.
 *
 * The four basis numbers are linearly independent over Q, so the
 * representation is unique and equality is componentwise. All arithmetic
 * is exact; overflow throws instead of wrapping.
 */
struct RingElem {
    Int a = 0;  // unit coefficient
    Int b = 0;  // i coefficient
    Int c = 0;  // √2 coefficient
    Int d = 0;  // i√2 coefficient

    constexpr RingElem() = default;
    constexpr RingElem(Int a_, Int b_, Int c_, Int d_) : a(a_), b(b_), c(c_), d(d_) {}

    static constexpr RingElem zero() { return {0, 0, 0, 0}; }
    static constexpr RingElem one() { return {1, 0, 0, 0}; }
    static constexpr RingElem from_int(Int x) { return {x, 0, 0, 0}; }

    friend bool operator==(const RingElem&, const RingElem&) = default;

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    bool all_even() const {
        return (a % 2 == 0) && (b % 2 == 0) && (c % 2 == 0) && (d % 2 == 0);
    }

    RingElem half() const { return {a / 2, b / 2, c / 2, d / 2}; }

    /// Complex conjugate: i -> -i.
    RingElem conj() const { return {a, -b, c, -d}; }

    RingElem operator-() const { return {-a, -b, -c, -d}; }

    std::array<Int, 4> components() const { return {a, b, c, d}; }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const RingElem& u) {
        return os << u.str();
    }
};

inline RingElem ring_add(const RingElem& u, const RingElem& v) {
    return {checked_add(u.a, v.a), checked_add(u.b, v.b),
            checked_add(u.c, v.c), checked_add(u.d, v.d)};
}

inline RingElem ring_sub(const RingElem& u, const RingElem& v) {
    return {checked_sub(u.a, v.a), checked_sub(u.b, v.b),
            checked_sub(u.c, v.c), checked_sub(u.d, v.d)};
}

/// Exact product in Z[√2, i].
RingElem ring_mul(const RingElem& u, const RingElem& v);

inline RingElem operator+(const RingElem& u, const RingElem& v) { return ring_add(u, v); }
inline RingElem operator-(const RingElem& u, const RingElem& v) { return ring_sub(u, v); }
inline RingElem operator*(const RingElem& u, const RingElem& v) { return ring_mul(u, v); }

/// Coefficient norm a² + b² + 2c² + 2d²; zero iff u = 0.
Int norm_sq(const RingElem& u);

/// Floating-point bridge (a + b·i + c·√2 + d·i·√2) / 2^scale. Never feeds
/// back into any exact code path.
std::complex<double> to_complex(const RingElem& u, int scale = 0);

/**
 * A ring element together with a power-of-two denominator: value / 2^scale.
 * Canonical form divides out factors of 2 greedily so equality is structural.
 */
struct ScaledRing {
    RingElem value;
    int scale = 0;

    ScaledRing() = default;
    ScaledRing(RingElem v, int k) : value(v), scale(k) {
        if (k < 0) throw std::invalid_argument("ScaledRing: negative scale");
    }

    friend bool operator==(const ScaledRing&, const ScaledRing&) = default;

    bool is_canonical() const {
        return scale == 0 || !value.all_even();
    }

    ScaledRing canonicalized() const {
        ScaledRing r = *this;
        while (r.scale > 0 && r.value.all_even()) {
            r.value = r.value.half();
            --r.scale;
        }
        return r;
    }
};

inline ScaledRing scaled_mul(const ScaledRing& x, const ScaledRing& y) {
    return ScaledRing(ring_mul(x.value, y.value), x.scale + y.scale);
}

/// Exact representation of e^{ikπ/4} for k in 0..7.
ScaledRing phase_factor(int k);

/**
 * Rescale value/2^scale to numerator at denominator 2^k, i.e. value·2^{k-scale}.
 * Fails (nullopt) when k < scale: the number has no representative in
 * Z[√2, i] at that denominator, which signals an unsynthesizable target.
 */
std::optional<RingElem> rescale_to(const ScaledRing& entry, int k);

/**
 * Dense matrix of ring elements with a global scale exponent, denoting
 * entries / 2^scale. Gate matrices are stored doubled (scale 1, entries 2G);
 * products of i+1 doubled gates live at scale i+1.
 */
class ScaledMatrix {
  public:
    ScaledMatrix() = default;
    ScaledMatrix(int rows, int cols, int scale = 0)
        : rows_(rows), cols_(cols), scale_(scale),
          entries_(static_cast<std::size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0)
            throw std::invalid_argument("ScaledMatrix: non-positive dimension");
        if (scale < 0)
            throw std::invalid_argument("ScaledMatrix: negative scale");
    }

    static ScaledMatrix identity(int dim, int scale = 0) {
        ScaledMatrix m(dim, dim, scale);
        for (int i = 0; i < dim; ++i) m.at(i, i) = RingElem::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int scale() const { return scale_; }
    void set_scale(int k) {
        if (k < 0) throw std::invalid_argument("ScaledMatrix: negative scale");
        scale_ = k;
    }

    RingElem& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    const RingElem& at(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * cols_ + c];
    }

    friend bool operator==(const ScaledMatrix&, const ScaledMatrix&) = default;

    /// Conjugate transpose (same scale).
    ScaledMatrix dagger() const;

    /// True iff this equals 2^scale-scaled identity times `diag`, i.e. entries
    /// are diag on the diagonal and zero elsewhere.
    bool is_diagonal_constant(const RingElem& diag) const;

    /// Divide out common factors of 2 from all entries, reducing the scale.
    ScaledMatrix canonicalized() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    int scale_ = 0;
    std::vector<RingElem> entries_;
};

/// Exact matrix product; scales add so powers of two track gate count.
ScaledMatrix scaled_mat_mul(const ScaledMatrix& a, const ScaledMatrix& b);

inline ScaledMatrix operator*(const ScaledMatrix& a, const ScaledMatrix& b) {
    return scaled_mat_mul(a, b);
}

/// Kronecker product; the first factor owns the most significant index bits.
ScaledMatrix tensor(const ScaledMatrix& a, const ScaledMatrix& b);

}  // namespace gatesynth
