#include "vptd/rational.hpp"

#include "vptd/error.hpp"

namespace vptd {

Rational rational_of(long num, long den) {
    if (den == 0) throw DomainError("rational", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || frac_len == 0)
            throw DomainError("rational", "cannot parse '" + text + "'");
        mpz_class num, den(1);
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
            throw DomainError("rational", "cannot parse '" + text + "'");
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw DomainError("rational", "cannot parse '" + text + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw DomainError("rational", "zero denominator in '" + text + "'");
    return q;
}

Rational binomial(const Rational& alpha, long l) {
    if (l < 0) throw DomainError("rational", "binomial with negative lower index");
    Rational result(1);
    Rational factor = alpha;
    for (long i = 0; i < l; ++i) {
        result *= factor;
        result /= Rational(i + 1);
        factor -= 1;
    }
    return result;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

BigReal to_bigreal(const Rational& q, long digits) {
    return BigReal::of(q, digits);
}

}
