#pragma once

#include <vector>

#include "vptd/bigreal.hpp"
#include "vptd/rational.hpp"

namespace vptd {

// Background evaluation point of the auxiliary-field energy functional.
// The physical saddle of the auxiliary field lies on the negative
// imaginary axis, so it is parameterized by its imaginary part s
// (sigma_0 = -i s), which keeps every evaluation real-valued.  The
// modified coupling gtilde = D*g is held fixed as the dimension grows.
struct BackgroundPoint {
    BigReal sigma0_im;   // s, in energy units
    BigReal gtilde;      // D*g > 0
    BigReal omega;       // bare frequency, >= 0
    Rational dimension;  // D
};

// The two frequency scales of the closed forms: Omega^2 = omega^2 + 4 s
// from the background shift, and OmegaTilde = 2 sqrt(Omega^2 + gt/Omega)
// from the one-loop fluctuation determinant.
struct AuxiliaryFrequencies {
    BigReal Omega;
    BigReal OmegaTilde;
};

AuxiliaryFrequencies auxiliary_frequencies(const BackgroundPoint& p);

// beta-linear coefficients of the low-temperature imaginary-time
// integrals; rates are the pairwise decay constants Omega_ij in row-major
// order (12, 13, ..., 1n, 23, ..., 2n, ...).  Each closed form is the
// coefficient of beta in the corresponding multiple integral.
BigReal integral_I2(const BigReal& r12);
BigReal integral_I3(const BigReal& r12, const BigReal& r13, const BigReal& r23);
BigReal integral_I4(const std::vector<BigReal>& rates);  // the 6 pairwise rates

// The two specific five- and six-time integrals entering the second
// diagram at two loops, as functions of the frequency pair.
BigReal integral_I5_special(const BigReal& Omega, const BigReal& OmegaTilde);
BigReal integral_I6_special(const BigReal& Omega, const BigReal& OmegaTilde);

// Closed-form next-to-leading bracket of the energy functional (the
// two-loop contribution multiplied by beta*D), as a function of the
// coupling and the two frequencies.
BigReal two_loop_bracket(const BigReal& gtilde, const BigReal& Omega,
                         const BigReal& OmegaTilde);

// The same quantity assembled diagram by diagram from the imaginary-time
// integrals; agreement with two_loop_bracket certifies the closed form.
BigReal two_loop_diagrams(const BigReal& gtilde, const BigReal& Omega,
                          const BigReal& OmegaTilde);

// Ground-state energy functional through next-to-leading order in 1/D:
// tree level D(-s^2/gt + Omega/2), one loop OmegaTilde/2 - Omega, and the
// two-loop bracket divided by D.
BigReal effective_potential_value(const BackgroundPoint& p);

// Location s* of the extremum of the functional over the background at
// fixed coupling and frequency: golden-section bracketing of the maximum
// refined by secant steps on a finite-difference first derivative.
BigReal extremal_background(const BigReal& gtilde, const BigReal& omega,
                            const Rational& dimension, long digits);

// Leading strong-coupling coefficient b_0(D) from the functional: the
// extremal value at omega = 0 carries the pure power law in the coupling,
// so a single extremization at unit coupling fixes the coefficient.
BigReal effective_b0(const Rational& dimension, long digits);

struct WeakCouplingCheck {
    // Relative deviations of the ladder-fitted background coefficients
    // s_1..s_orders from their closed forms.
    std::vector<BigReal> s_residuals;
    // Relative deviations of the ladder-fitted energy coefficients from
    // the three-term dimensional truncation of the perturbation series.
    std::vector<BigReal> energy_residuals;
    // Fitted values, for audit.
    std::vector<BigReal> fitted_s;
    std::vector<BigReal> fitted_energy;
};

// Extremizes the functional on a ladder of small couplings, fits the
// background and energy expansions in the coupling, and compares them
// against the closed-form background coefficients and the perturbation
// series' three leading dimensional terms.
WeakCouplingCheck weak_coupling_check(const Rational& dimension, const BigReal& omega,
                                      int orders, long digits);

// Closed-form weak-coupling background coefficients s_1..s_orders.
std::vector<BigReal> weak_coupling_s_closed(const Rational& dimension, const BigReal& omega,
                                            int orders, long digits);

struct StrongCouplingReference {
    BigReal B0, B1, B2;            // exact radical large-D energy coefficients
    std::vector<BigReal> S1;       // 1/D expansion of the leading background scale
};

StrongCouplingReference strong_coupling_reference(long digits);

}
