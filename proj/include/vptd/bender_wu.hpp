#pragma once

#include <memory>
#include <vector>

#include "vptd/bigreal.hpp"
#include "vptd/dpolynomial.hpp"
#include "vptd/error.hpp"
#include "vptd/rational.hpp"

namespace vptd {

// Ground-state wavefunction coefficients c_m^(k) of the quartic oscillator in
// D dimensions and the energy coefficients eps_k built from them. One
// recursion drives four coefficient representations:
//   * exact polynomials in D            (SymbolicArena)
//   * exact rationals at fixed D        (RationalArena)
//   * floating point at fixed D         (RealArena)
//   * leading-in-D coefficient windows  (WindowArena)
//
// Every contribution to c_m^(k) has D-degree exactly k+1-m and, for fixed
// (k, m), every coefficient carries the sign (-1)^k, so sums never cancel and
// the floating-point arenas lose only rounding-level accuracy.

struct SymbolicArena {
    using Value = DPolynomial;
    Value zero() const { return DPolynomial(); }
    Value seed_c11() const;
    Value seed_c12() const;
    void add_D_shift_scaled(Value& acc, const Rational& q, long shift, const Value& x) const;
    void add_product_scaled(Value& acc, const Rational& q, const Value& x, const Value& y) const;
    Value epsilon_from_c1(const Value& c1) const;
};

struct RationalArena {
    using Value = Rational;
    explicit RationalArena(Rational dimension);
    Value zero() const { return Rational(0); }
    Value seed_c11() const { return -(dim_ + 2) / 4; }
    Value seed_c12() const { return Rational(-1, 4); }
    void add_D_shift_scaled(Value& acc, const Rational& q, long shift, const Value& x) const {
        acc += q * (dim_ + shift) * x;
    }
    void add_product_scaled(Value& acc, const Rational& q, const Value& x, const Value& y) const {
        acc += q * x * y;
    }
    Value epsilon_from_c1(const Value& c1) const { return -dim_ * c1; }
    const Rational& dimension() const { return dim_; }

private:
    Rational dim_;
};

class RealArena {
public:
    using Value = BigReal;
    RealArena(const BigReal& dimension, long digits);
    Value zero() const { return BigReal(digits_); }
    Value seed_c11() const;
    Value seed_c12() const;
    void add_D_shift_scaled(Value& acc, const Rational& q, long shift, const Value& x) const;
    void add_product_scaled(Value& acc, const Rational& q, const Value& x, const Value& y) const;
    Value epsilon_from_c1(const Value& c1) const;
    long digits() const { return digits_; }

private:
    BigReal dim_;
    long digits_;
    mutable BigReal scratch_;
};

// Polynomial in D known by its degree and its `width` leading coefficients;
// w[0] multiplies D^degree. Degrees inside one recursion cell always agree,
// so windows stay aligned under addition.
struct WindowPoly {
    long degree = -1;  // -1 encodes the zero polynomial
    std::vector<BigReal> w;
};

class WindowArena {
public:
    using Value = WindowPoly;
    WindowArena(int width, long digits);
    Value zero() const { return WindowPoly{}; }
    Value seed_c11() const;
    Value seed_c12() const;
    void add_D_shift_scaled(Value& acc, const Rational& q, long shift, const Value& x) const;
    void add_product_scaled(Value& acc, const Rational& q, const Value& x, const Value& y) const;
    Value epsilon_from_c1(const Value& c1) const;
    int width() const { return width_; }
    long digits() const { return digits_; }

private:
    void ensure(Value& acc, long degree) const;
    int width_;
    long digits_;
    mutable BigReal t1_, t2_;
};

template <class Arena>
class BenderWuTable {
public:
    using Value = typename Arena::Value;

    BenderWuTable(Arena arena, int order) : arena_(std::move(arena)), order_(order) {
        if (order < 1) throw DomainError("bender_wu", "order must be at least 1");
        build();
    }

    int order() const { return order_; }
    const Arena& arena() const { return arena_; }

    // c_m^(k); zero for m > k+1
    const Value& coeff(int k, int m) const {
        check_k(k);
        if (m < 1) throw DomainError("bender_wu", "coefficient index must be positive");
        if (m > k + 1) return zero_;
        return c_[k - 1][m - 1];
    }

    const Value& epsilon(int k) const {
        check_k(k);
        return eps_[k - 1];
    }

private:
    void check_k(int k) const {
        if (k < 1 || k > order_) throw DomainError("bender_wu", "order index out of range");
    }

    void build() {
        c_.resize(order_);
        eps_.resize(order_, arena_.zero());
        zero_ = arena_.zero();
        c_[0].clear();
        c_[0].push_back(arena_.seed_c11());
        c_[0].push_back(arena_.seed_c12());
        eps_[0] = arena_.epsilon_from_c1(c_[0][0]);
        for (int k = 2; k <= order_; ++k) {
            auto& row = c_[k - 1];
            row.assign(k + 1, arena_.zero());
            for (int m = k + 1; m >= 1; --m) {
                Value acc = arena_.zero();
                if (m + 1 <= k + 1)
                    arena_.add_D_shift_scaled(acc, rational_of(m + 1, 2L * m), 2 * m, row[m]);
                for (int l = 1; l <= k - 1; ++l) {
                    int nlo = std::max(1, m + l - k);
                    int nhi = std::min(m, l + 1);
                    for (int n = nlo; n <= nhi; ++n)
                        arena_.add_product_scaled(acc,
                                                  rational_of(static_cast<long>(n) * (m + 1 - n), m),
                                                  c_[l - 1][n - 1], c_[k - l - 1][m - n]);
                }
                row[m - 1] = std::move(acc);
            }
            eps_[k - 1] = arena_.epsilon_from_c1(row[0]);
        }
    }

    Arena arena_;
    int order_;
    std::vector<std::vector<Value>> c_;
    std::vector<Value> eps_;
    Value zero_;
};

using SymbolicWaveTable = BenderWuTable<SymbolicArena>;
using RationalWaveTable = BenderWuTable<RationalArena>;
using RealWaveTable = BenderWuTable<RealArena>;

SymbolicWaveTable bender_wu_table(int order);
RationalWaveTable bender_wu_table(int order, const Rational& dimension);
RealWaveTable bender_wu_table(int order, const BigReal& dimension, long digits);

// Weak-coupling energy series E/omega = D/2 + sum_k eps_k ghat^k in the three
// coefficient representations.
struct SymbolicWeakSeries {
    int order = 0;
    std::vector<DPolynomial> eps;  // eps[k-1] multiplies ghat^k
};

struct RationalWeakSeries {
    int order = 0;
    Rational dimension;
    std::vector<Rational> eps;
};

struct RealWeakSeries {
    int order = 0;
    BigReal dimension;
    long digits = BigReal::default_digits;
    std::vector<BigReal> eps;
};

SymbolicWeakSeries epsilon_coefficients(int order);
RationalWeakSeries epsilon_coefficients(int order, const Rational& dimension);
RealWeakSeries epsilon_coefficients(int order, const BigReal& dimension, long digits);

// Coefficients of D^j in eps_k, index j = 0..k+1. The j = 0 entry is always
// zero: every eps_k carries an overall factor of D.
std::vector<Rational> epsilon_d_expansion(const DPolynomial& eps_k);

// Leading 1/D-window of every eps_k up to `order`, kept in floating point.
// Stores the top `window` coefficients eps_j^(k), j = k+1, k, ..., k+2-window.
class WindowedEpsilonTable {
public:
    WindowedEpsilonTable(int order, int window, long digits);

    int order() const { return order_; }
    int window() const { return window_; }
    long digits() const { return digits_; }

    // Smallest stored D-power for eps_k.
    long floor_power(int k) const;

    // eps_j^(k): zero above the degree k+1, error below the stored window.
    const BigReal& coeff(int k, long j) const;

private:
    int order_;
    int window_;
    long digits_;
    std::vector<WindowPoly> eps_;
    BigReal zero_;
};

}
