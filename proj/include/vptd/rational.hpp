#pragma once

#include <gmpxx.h>

#include <string>

#include "vptd/bigreal.hpp"

namespace vptd {

// Exact rational scalar. mpq_class already maintains the canonical form
// (reduced, positive denominator) that downstream code relies on.
using Rational = mpq_class;

Rational rational_of(long num, long den = 1);

// Parses "3", "-7/2" and decimal literals like "2.5" exactly.
Rational parse_rational(const std::string& text);

// Generalized binomial coefficient binom(alpha, l) for rational alpha and
// l >= 0, as the product alpha(alpha-1)...(alpha-l+1)/l!. Gamma functions are
// never involved, so half-integer arguments stay exact.
Rational binomial(const Rational& alpha, long l);

std::string rational_str(const Rational& q);

BigReal to_bigreal(const Rational& q, long digits);

}
