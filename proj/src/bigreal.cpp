#include "vptd/bigreal.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "vptd/error.hpp"

namespace vptd {

long bits_for_digits(long digits) {
    if (digits < 1) throw DomainError("bigreal", "precision must be at least one digit");
    return static_cast<long>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 16;
}

namespace {

long digits_for_bits(mpfr_prec_t bits) {
    return static_cast<long>(std::floor(static_cast<double>(bits - 16) / 3.3219280948873623));
}

}

BigReal::BigReal() { mpfr_init2(v_, bits_for_digits(default_digits)); mpfr_set_zero(v_, 1); }

BigReal::BigReal(long digits) { mpfr_init2(v_, bits_for_digits(digits)); mpfr_set_zero(v_, 1); }

BigReal::BigReal(const BigReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::of(double x, long digits) {
    BigReal r(digits);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
}

BigReal BigReal::of(long x, long digits) {
    BigReal r(digits);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
}

BigReal BigReal::of(const mpq_class& q, long digits) {
    BigReal r(digits);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
}

BigReal BigReal::parse(const std::string& text, long digits) {
    BigReal r(digits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("bigreal", "cannot parse '" + text + "' as a decimal number");
    return r;
}

long BigReal::digits() const { return digits_for_bits(mpfr_get_prec(v_)); }

mpfr_prec_t BigReal::precision_bits() const { return mpfr_get_prec(v_); }

BigReal BigReal::round_to(long digits) const {
    BigReal r(digits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigReal& BigReal::operator+=(const BigReal& rhs) { mpfr_add(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
BigReal& BigReal::operator-=(const BigReal& rhs) { mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
BigReal& BigReal::operator*=(const BigReal& rhs) { mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
BigReal& BigReal::operator/=(const BigReal& rhs) { mpfr_div(v_, v_, rhs.v_, MPFR_RNDN); return *this; }

int BigReal::sign() const { return mpfr_sgn(v_); }

bool BigReal::is_finite() const { return mpfr_number_p(v_) != 0; }

double BigReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string BigReal::str(long sig_digits) const {
    if (sig_digits <= 0) sig_digits = digits();
    if (sig_digits < 2) sig_digits = 2;
    std::vector<char> buf(static_cast<size_t>(sig_digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(sig_digits - 1), v_);
    return std::string(buf.data());
}

namespace {

mpfr_prec_t joint_prec(const BigReal& a, const BigReal& b) {
    return std::max(mpfr_get_prec(a.raw()), mpfr_get_prec(b.raw()));
}

BigReal make_with_bits(mpfr_prec_t bits) {
    BigReal r(1);
    mpfr_set_prec(r.raw(), bits);
    mpfr_set_zero(r.raw(), 1);
    return r;
}

}

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r = make_with_bits(joint_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r = make_with_bits(joint_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r = make_with_bits(joint_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r = make_with_bits(joint_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }

BigReal abs(const BigReal& x) {
    BigReal r(x);
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigReal sqrt(const BigReal& x) {
    if (x.sign() < 0) throw DomainError("bigreal", "sqrt of a negative value");
    BigReal r(x);
    mpfr_sqrt(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigReal cbrt(const BigReal& x) {
    BigReal r(x);
    mpfr_cbrt(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigReal exp(const BigReal& x) {
    BigReal r(x);
    mpfr_exp(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigReal log(const BigReal& x) {
    if (x.sign() <= 0) throw DomainError("bigreal", "log of a non-positive value");
    BigReal r(x);
    mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigReal pow_si(const BigReal& x, long n) {
    BigReal r(x);
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

const BigReal& min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

}
