#include "vptd/dpolynomial.hpp"

#include <sstream>

namespace vptd {

namespace {
const Rational zero_rational(0);
}

DPolynomial::DPolynomial(Rational constant) {
    if (constant != 0) c_.push_back(std::move(constant));
}

DPolynomial::DPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

DPolynomial DPolynomial::variable() {
    return DPolynomial(std::vector<Rational>{Rational(0), Rational(1)});
}

const Rational& DPolynomial::coeff(long j) const {
    if (j < 0 || j >= static_cast<long>(c_.size())) return zero_rational;
    return c_[static_cast<size_t>(j)];
}

void DPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

DPolynomial& DPolynomial::operator+=(const DPolynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Rational(0));
    for (size_t j = 0; j < rhs.c_.size(); ++j) c_[j] += rhs.c_[j];
    trim();
    return *this;
}

DPolynomial& DPolynomial::operator-=(const DPolynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Rational(0));
    for (size_t j = 0; j < rhs.c_.size(); ++j) c_[j] -= rhs.c_[j];
    trim();
    return *this;
}

DPolynomial DPolynomial::operator-() const {
    DPolynomial r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

DPolynomial operator*(const DPolynomial& a, const DPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return DPolynomial();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    return DPolynomial(std::move(out));
}

DPolynomial& DPolynomial::scale(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

DPolynomial DPolynomial::mul_shifted_variable(const Rational& shift) const {
    if (is_zero()) return DPolynomial();
    std::vector<Rational> out(c_.size() + 1, Rational(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        out[j + 1] += c_[j];
        out[j] += shift * c_[j];
    }
    return DPolynomial(std::move(out));
}

Rational DPolynomial::eval(const Rational& d) const {
    Rational acc(0);
    for (size_t j = c_.size(); j-- > 0;) {
        acc *= d;
        acc += c_[j];
    }
    return acc;
}

BigReal DPolynomial::eval(const BigReal& d) const {
    BigReal acc(d.digits());
    for (size_t j = c_.size(); j-- > 0;) {
        acc *= d;
        acc += to_bigreal(c_[j], d.digits());
    }
    return acc;
}

std::string DPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long j = degree(); j >= 0; --j) {
        const Rational& q = coeff(j);
        if (q == 0) continue;
        Rational a = q;
        if (!first) {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (j == 0 || a != 1) {
            out << rational_str(a);
            if (j > 0) out << "*";
        }
        if (j > 0) {
            out << "D";
            if (j > 1) out << "^" << j;
        }
    }
    return out.str();
}

}
