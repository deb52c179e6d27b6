#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vptd/bigreal.hpp"
#include "vptd/rational.hpp"
#include "vptd/resummation.hpp"

namespace vptd {

struct SequenceOrder {
    int order = 0;
    bool ok = false;
    std::string note;             // reason when the order was skipped
    StrongCouplingResult result;  // valid only when ok
};

struct B0Sequence {
    Rational dimension = 1;
    long digits = 0;
    int max_order = 0;
    std::vector<SequenceOrder> orders;  // orders[i] holds order i+1

    const StrongCouplingResult& at(int order) const;
};

// Anchored ladder of strong-coupling optimizations: order n reuses the
// frequency found at order n-1 to stay on one branch of stationary points.
// A failing order is flagged and skipped, keeping the previous anchor.
// With uncertainty assessment the whole ladder is repeated at 1.5x the
// digits and the per-order differences are recorded.
// digits = 0 selects the default precision policy for max_order.
B0Sequence b0_sequence(const Rational& dimension, int max_order, long digits = 0,
                       bool with_uncertainty = true);

struct ConvergenceFit {
    BigReal intercept;        // A in |b0_N - ref|/ref ~ exp(A - B N^(1/3))
    BigReal slope;            // B (positive for converging sequences)
    BigReal intercept_error;  // ordinary-least-squares standard errors
    BigReal slope_error;
    int points = 0;
    int order_lo = 0, order_hi = 0;
};

// Least-squares fit of ln(relative deviation) against N^(1/3) over the
// orders [order_lo, order_hi], both parities pooled.
ConvergenceFit fit_convergence_law(const B0Sequence& sequence, const BigReal& reference,
                                   int order_lo, int order_hi);

struct ParityFit {
    bool ok = false;
    std::string note;
    BigReal limit;      // fitted v_infinity
    BigReal amplitude;  // fitted a in v_N = v_inf + a exp(-c N^(1/3))
    BigReal rate;       // fitted c
    int points = 0;
    int first_order = 0, last_order = 0;
};

struct ExtrapolationResult {
    bool ok = false;
    std::string note;
    BigReal value;        // midpoint of the parity limits
    BigReal uncertainty;  // half the gap between them
    ParityFit odd, even;
};

// Extrapolates a sequence v_N to N -> infinity by fitting
// v_N = v_inf + a exp(-c N^(1/3)) separately to the odd and even
// subsequences (their approach is typically two-sided) and combining the two
// limits. The fitted tail per parity is at most max_tail_points long, starts
// no earlier than earliest_tail_order, and never before the last sign change
// of the first differences.
ExtrapolationResult odd_even_extrapolate(const std::vector<std::pair<int, BigReal>>& data,
                                         long digits, int earliest_tail_order = 0,
                                         int max_tail_points = 15);

}
