#include "vptd/bender_wu.hpp"

namespace vptd {

DPolynomial SymbolicArena::seed_c11() const {
    return DPolynomial(std::vector<Rational>{Rational(-1, 2), Rational(-1, 4)});
}

DPolynomial SymbolicArena::seed_c12() const { return DPolynomial(Rational(-1, 4)); }

void SymbolicArena::add_D_shift_scaled(DPolynomial& acc, const Rational& q, long shift,
                                       const DPolynomial& x) const {
    DPolynomial term = x.mul_shifted_variable(Rational(shift));
    term.scale(q);
    acc += term;
}

void SymbolicArena::add_product_scaled(DPolynomial& acc, const Rational& q, const DPolynomial& x,
                                       const DPolynomial& y) const {
    DPolynomial term = x * y;
    term.scale(q);
    acc += term;
}

DPolynomial SymbolicArena::epsilon_from_c1(const DPolynomial& c1) const {
    DPolynomial term = c1.mul_shifted_variable(Rational(0));
    term.scale(Rational(-1));
    return term;
}

RationalArena::RationalArena(Rational dimension) : dim_(std::move(dimension)) {
    if (dim_ <= 0) throw DomainError("bender_wu", "dimension must be positive");
}

RealArena::RealArena(const BigReal& dimension, long digits)
    : dim_(dimension.round_to(digits)), digits_(digits), scratch_(digits) {
    if (dimension.sign() <= 0) throw DomainError("bender_wu", "dimension must be positive");
}

BigReal RealArena::seed_c11() const {
    BigReal r(digits_);
    mpfr_add_si(r.raw(), dim_.raw(), 2, MPFR_RNDN);
    mpfr_div_si(r.raw(), r.raw(), -4, MPFR_RNDN);
    return r;
}

BigReal RealArena::seed_c12() const {
    BigReal r(digits_);
    mpfr_set_si(r.raw(), -1, MPFR_RNDN);
    mpfr_div_si(r.raw(), r.raw(), 4, MPFR_RNDN);
    return r;
}

void RealArena::add_D_shift_scaled(BigReal& acc, const Rational& q, long shift,
                                   const BigReal& x) const {
    mpfr_add_si(scratch_.raw(), dim_.raw(), shift, MPFR_RNDN);
    mpfr_mul(scratch_.raw(), scratch_.raw(), x.raw(), MPFR_RNDN);
    mpfr_mul_q(scratch_.raw(), scratch_.raw(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc.raw(), acc.raw(), scratch_.raw(), MPFR_RNDN);
}

void RealArena::add_product_scaled(BigReal& acc, const Rational& q, const BigReal& x,
                                   const BigReal& y) const {
    mpfr_mul(scratch_.raw(), x.raw(), y.raw(), MPFR_RNDN);
    mpfr_mul_q(scratch_.raw(), scratch_.raw(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc.raw(), acc.raw(), scratch_.raw(), MPFR_RNDN);
}

BigReal RealArena::epsilon_from_c1(const BigReal& c1) const {
    BigReal r(digits_);
    mpfr_mul(r.raw(), dim_.raw(), c1.raw(), MPFR_RNDN);
    mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

WindowArena::WindowArena(int width, long digits)
    : width_(width), digits_(digits), t1_(digits), t2_(digits) {
    if (width < 2) throw DomainError("bender_wu", "window width must be at least 2");
}

WindowPoly WindowArena::seed_c11() const {
    WindowPoly p;
    p.degree = 1;
    p.w.push_back(BigReal::of(Rational(-1, 4), digits_));
    p.w.push_back(BigReal::of(Rational(-1, 2), digits_));
    return p;
}

WindowPoly WindowArena::seed_c12() const {
    WindowPoly p;
    p.degree = 0;
    p.w.push_back(BigReal::of(Rational(-1, 4), digits_));
    return p;
}

void WindowArena::ensure(WindowPoly& acc, long degree) const {
    if (acc.degree == -1) {
        acc.degree = degree;
        size_t len = static_cast<size_t>(std::min<long>(width_, degree + 1));
        acc.w.assign(len, BigReal(digits_));
    } else if (acc.degree != degree) {
        throw Error("bender_wu", "window degree mismatch");
    }
}

// acc += q*(D + shift)*x. Multiplying by D raises the degree and leaves the
// top-aligned window untouched; the shift feeds each stored coefficient one
// slot down, with the lowest one dropping off a full window.
void WindowArena::add_D_shift_scaled(WindowPoly& acc, const Rational& q, long shift,
                                     const WindowPoly& x) const {
    if (x.degree == -1) return;
    ensure(acc, x.degree + 1);
    for (size_t i = 0; i < x.w.size(); ++i) {
        mpfr_mul_q(t1_.raw(), x.w[i].raw(), q.get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc.w[i].raw(), acc.w[i].raw(), t1_.raw(), MPFR_RNDN);
        if (i + 1 < acc.w.size()) {
            mpfr_mul_si(t1_.raw(), t1_.raw(), shift, MPFR_RNDN);
            mpfr_add(acc.w[i + 1].raw(), acc.w[i + 1].raw(), t1_.raw(), MPFR_RNDN);
        }
    }
}

void WindowArena::add_product_scaled(WindowPoly& acc, const Rational& q, const WindowPoly& x,
                                     const WindowPoly& y) const {
    if (x.degree == -1 || y.degree == -1) return;
    ensure(acc, x.degree + y.degree);
    size_t len = acc.w.size();
    for (size_t i = 0; i < len; ++i) {
        mpfr_set_zero(t2_.raw(), 1);
        size_t alo = i + 1 > y.w.size() ? i + 1 - y.w.size() : 0;
        size_t ahi = std::min(i, x.w.size() - 1);
        for (size_t a = alo; a <= ahi; ++a)
            mpfr_fma(t2_.raw(), x.w[a].raw(), y.w[i - a].raw(), t2_.raw(), MPFR_RNDN);
        mpfr_mul_q(t2_.raw(), t2_.raw(), q.get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc.w[i].raw(), acc.w[i].raw(), t2_.raw(), MPFR_RNDN);
    }
}

WindowPoly WindowArena::epsilon_from_c1(const WindowPoly& c1) const {
    WindowPoly p;
    if (c1.degree == -1) return p;
    p.degree = c1.degree + 1;
    size_t len = static_cast<size_t>(std::min<long>(width_, p.degree + 1));
    p.w.assign(len, BigReal(digits_));
    for (size_t i = 0; i < c1.w.size() && i < len; ++i) {
        mpfr_neg(p.w[i].raw(), c1.w[i].raw(), MPFR_RNDN);
    }
    return p;
}

SymbolicWaveTable bender_wu_table(int order) { return SymbolicWaveTable(SymbolicArena{}, order); }

RationalWaveTable bender_wu_table(int order, const Rational& dimension) {
    return RationalWaveTable(RationalArena(dimension), order);
}

RealWaveTable bender_wu_table(int order, const BigReal& dimension, long digits) {
    return RealWaveTable(RealArena(dimension, digits), order);
}

SymbolicWeakSeries epsilon_coefficients(int order) {
    SymbolicWaveTable table = bender_wu_table(order);
    SymbolicWeakSeries s;
    s.order = order;
    s.eps.reserve(order);
    for (int k = 1; k <= order; ++k) s.eps.push_back(table.epsilon(k));
    return s;
}

RationalWeakSeries epsilon_coefficients(int order, const Rational& dimension) {
    RationalWaveTable table = bender_wu_table(order, dimension);
    RationalWeakSeries s;
    s.order = order;
    s.dimension = dimension;
    s.eps.reserve(order);
    for (int k = 1; k <= order; ++k) s.eps.push_back(table.epsilon(k));
    return s;
}

RealWeakSeries epsilon_coefficients(int order, const BigReal& dimension, long digits) {
    RealWaveTable table = bender_wu_table(order, dimension, digits);
    RealWeakSeries s;
    s.order = order;
    s.dimension = dimension.round_to(digits);
    s.digits = digits;
    s.eps.reserve(order);
    for (int k = 1; k <= order; ++k) s.eps.push_back(table.epsilon(k));
    return s;
}

std::vector<Rational> epsilon_d_expansion(const DPolynomial& eps_k) {
    std::vector<Rational> out(static_cast<size_t>(eps_k.degree()) + 1, Rational(0));
    for (long j = 0; j <= eps_k.degree(); ++j) out[static_cast<size_t>(j)] = eps_k.coeff(j);
    return out;
}

WindowedEpsilonTable::WindowedEpsilonTable(int order, int window, long digits)
    : order_(order), window_(window), digits_(digits), zero_(digits) {
    BenderWuTable<WindowArena> table(WindowArena(window, digits), order);
    eps_.reserve(order);
    for (int k = 1; k <= order; ++k) eps_.push_back(table.epsilon(k));
}

long WindowedEpsilonTable::floor_power(int k) const {
    if (k < 1 || k > order_) throw DomainError("bender_wu", "order index out of range");
    return std::max<long>(1, static_cast<long>(k) + 2 - window_);
}

const BigReal& WindowedEpsilonTable::coeff(int k, long j) const {
    if (k < 1 || k > order_) throw DomainError("bender_wu", "order index out of range");
    const WindowPoly& p = eps_[static_cast<size_t>(k) - 1];
    if (j > p.degree) return zero_;
    if (j < floor_power(k))
        throw DomainError("bender_wu", "requested coefficient lies below the stored window");
    return p.w[static_cast<size_t>(p.degree - j)];
}

}
