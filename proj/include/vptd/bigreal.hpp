#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace vptd {

// Bits needed so that round-trips through `digits` decimal digits are safe.
long bits_for_digits(long digits);

// Value-semantic MPFR wrapper. Every value carries its own precision; binary
// operations produce a result at the larger of the two operand precisions,
// compound assignments keep the precision of the target. Rounding is always
// to nearest.
class BigReal {
public:
    static constexpr long default_digits = 64;

    BigReal();
    explicit BigReal(long digits);
    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    static BigReal of(double x, long digits = default_digits);
    static BigReal of(long x, long digits = default_digits);
    static BigReal of(const mpq_class& q, long digits);
    static BigReal parse(const std::string& text, long digits);

    long digits() const;
    mpfr_prec_t precision_bits() const;
    BigReal round_to(long digits) const;

    BigReal operator-() const;
    BigReal& operator+=(const BigReal& rhs);
    BigReal& operator-=(const BigReal& rhs);
    BigReal& operator*=(const BigReal& rhs);
    BigReal& operator/=(const BigReal& rhs);

    int sign() const;
    bool is_finite() const;
    double to_double() const;

    // Scientific-notation decimal string; sig_digits == 0 prints the full
    // working precision. Deterministic for fixed input and precision.
    std::string str(long sig_digits = 0) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);

bool operator==(const BigReal& a, const BigReal& b);
bool operator!=(const BigReal& a, const BigReal& b);
bool operator<(const BigReal& a, const BigReal& b);
bool operator<=(const BigReal& a, const BigReal& b);
bool operator>(const BigReal& a, const BigReal& b);
bool operator>=(const BigReal& a, const BigReal& b);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal pow_si(const BigReal& x, long n);
const BigReal& min(const BigReal& a, const BigReal& b);
const BigReal& max(const BigReal& a, const BigReal& b);

}
