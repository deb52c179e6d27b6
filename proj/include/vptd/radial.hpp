#pragma once

#include "vptd/bigreal.hpp"

namespace vptd {

// Radial eigenvalue problem for the D-dimensional Schroedinger operator
//   -(1/2) nabla^2 + (1/2) omega^2 x^2 + g x^4
// reduced to one dimension through u(x) = x^((D-1)/2) psi(x), which trades
// the angular Laplacian for the centrifugal-like potential term
// (D-1)(D-3)/(8 x^2).  For D = 1 the reduction is the parity-even half-line
// problem, so the same solver covers the full line.
struct RadialProblem {
    int dimension = 3;        // D >= 1
    double omega = 0.0;       // bare frequency, >= 0
    double coupling = 1.0;    // quartic coupling g >= 0; omega and g not both 0
    double x_max = 12.0;      // domain cutoff, in the units of the couplings
    int grid_points = 24000;  // >= 2000; the refined pass doubles the density
};

// Eigenvalue with the error estimate taken from the Richardson
// extrapolation gap between the two grid spacings (plus a sweep-roundoff
// floor), so the quoted uncertainty is an honest property of the run.
struct RadialEnergy {
    BigReal value;
    BigReal uncertainty;
};

// Ground-state (nodeless) eigenvalue by Numerov shooting on the reduced
// equation: a convergent power-series start at x_0 = 1e-6 carries the
// solution across the origin region where the centrifugal term defeats the
// finite-difference stencil, outward and inward sweeps meet at the outer
// classical turning point, node counting brackets the energy, and a
// safeguarded secant drives the matching defect to zero.  The solve runs
// once on the declared grid and once at doubled density; the two
// eigenvalues are Richardson-combined.
//
// target_digits (1..12) sets the boundary-amplitude requirement: the WKB
// decay integral from the turning point to x_max must keep the boundary
// amplitude below 10^-(target_digits+5), or the run aborts rather than
// return a value whose tail truncation is unassessed.  The ceiling of 12
// states plainly what a double-precision shooting method can certify.
RadialEnergy ground_energy(const RadialProblem& p, int target_digits);

}
