#pragma once

#include <string>
#include <vector>

#include "vptd/bigreal.hpp"
#include "vptd/rational.hpp"

namespace vptd {

// Dense polynomial in the spatial dimension D with exact rational
// coefficients, stored lowest power first and kept trimmed of trailing zeros.
class DPolynomial {
public:
    DPolynomial() = default;
    explicit DPolynomial(Rational constant);
    explicit DPolynomial(std::vector<Rational> coeffs);

    static DPolynomial variable();  // the monomial D

    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    // coefficient of D^j; zero beyond the degree
    const Rational& coeff(long j) const;

    DPolynomial& operator+=(const DPolynomial& rhs);
    DPolynomial& operator-=(const DPolynomial& rhs);
    DPolynomial operator-() const;

    friend DPolynomial operator+(DPolynomial a, const DPolynomial& b) { return a += b; }
    friend DPolynomial operator-(DPolynomial a, const DPolynomial& b) { return a -= b; }
    friend DPolynomial operator*(const DPolynomial& a, const DPolynomial& b);
    friend bool operator==(const DPolynomial& a, const DPolynomial& b) { return a.c_ == b.c_; }

    DPolynomial& scale(const Rational& s);

    // (D + shift) * p, the only product the recursion needs besides the
    // generic one
    DPolynomial mul_shifted_variable(const Rational& shift) const;

    Rational eval(const Rational& d) const;
    BigReal eval(const BigReal& d) const;

    std::string str() const;  // e.g. "1/4*D^2 + 1/2*D"

private:
    void trim();
    std::vector<Rational> c_;
};

}
