#pragma once

// Independent reference implementations used only by the test suites. Each
// one deliberately takes a different computational route from the library
// code it checks, so agreement certifies the formulas rather than the shared
// arithmetic.

#include "vptd/bigreal.hpp"
#include "vptd/rational.hpp"

namespace vptd::testoracle {

// Resummed ground-state energy by direct term-by-term summation with
// gamma-function binomial weights and fresh power evaluations per term.
BigReal energy_gamma_route(int order, const Rational& dimension, const BigReal& coupling,
                           const BigReal& frequency, const BigReal& omega, long digits);

// Resummed ground-state energy reconstructed from numerical Taylor
// coefficients of the frequency-shifted weak-coupling series: divided
// differences on a cluster of tiny couplings, no binomial expansion at all.
BigReal energy_divided_difference_route(int order, const Rational& dimension,
                                        const BigReal& coupling, const BigReal& frequency,
                                        const BigReal& omega, long digits);

// Correlation integral int d^n tau exp(-sum_{i<j} r_ij |tau_i - tau_j|) per
// unit length of the time box, by brute-force nested quadrature: the last
// time sits at the centre of a box long enough that boundary truncation is
// far below the tolerance, the innermost time is integrated exactly on each
// linear segment of the exponent, and every remaining time by Gauss-Legendre
// panels whose nodes are generated at runtime. Panels never straddle a kink
// of the exponent and are narrow enough relative to the fastest decay rate
// that the rule is converged to machine accuracy on each one. `rates` lists
// the upper triangle row-major: r12, r13, ..., r1n, r23, ..., r(n-1)n. Every
// time must be tied to the rest with total rate >= 0.8 so the box truncation
// stays negligible; `refine` doubles the panel density everywhere, which
// serves as the oracle's internal convergence check.
double quad_In_per_beta(int n, const std::vector<double>& rates, bool refine = false);

}
