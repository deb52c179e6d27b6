#pragma once

#include <vector>

#include "vptd/bigreal.hpp"

namespace vptd {

// Dense polynomial with floating-point coefficients, c[i] multiplying u^i.
struct RealPolynomial {
    std::vector<BigReal> c;

    long degree() const;
    BigReal eval(const BigReal& u) const;
    RealPolynomial derivative() const;
};

// Simple roots inside [lo, hi] located by sign changes on a geometric grid
// and polished by bracket-safeguarded Newton iteration to `digits` relative
// accuracy. Roots of even multiplicity (no sign change) are not detected;
// the stationarity polynomials this serves have simple roots away from
// degeneracies, and candidates lost to a tangency would be caught by the
// order-to-order continuity checks downstream.
std::vector<BigReal> roots_on_geometric_grid(const RealPolynomial& p, const BigReal& lo,
                                             const BigReal& hi, int points_per_decade, long digits);

// Merges root lists, collapsing entries that agree to the given relative
// accuracy; the result is sorted ascending.
std::vector<BigReal> merge_roots(std::vector<BigReal> roots, long digits);

}
