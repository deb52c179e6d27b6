#pragma once

#include <optional>
#include <vector>

#include "vptd/bender_wu.hpp"
#include "vptd/bigreal.hpp"
#include "vptd/convergence.hpp"
#include "vptd/series1d.hpp"

namespace vptd {

// Expansion of one resummation order N around the infinite-dimensional
// limit: the optimal frequency behaves as D^(1/3)(C_0 + C_1/D + ...) and
// the reduced energy coefficient as D^(4/3)(B_0 + B_1/D + ...).
struct LargeDOrder {
    int order = 0;   // resummation order N
    int m_max = 0;   // deepest 1/D coefficient computed
    long digits = 0;
    std::vector<BigReal> C;              // C_0..C_m of the optimal frequency
    std::vector<BigReal> B;              // B_0..B_m of the energy coefficient
    std::vector<BigReal> leading_roots;  // all positive roots of the leading condition (audit)
    BigReal stationarity_residual;       // largest relative residual of the solved conditions
};

// K_{m,k}: coefficient of x^m in (C(x)/C_0)^(1-3k), written as a sum over
// the integer partitions of m in the frequency ratios c_l = C_l/C_0
// (ratios[l-1] holds c_l).
BigReal multinomial_weight(int m, int k, const std::vector<BigReal>& ratios, long digits);

class LargeDContext {
public:
    // Builds the windowed coefficient table once; window m_max + 2 keeps
    // every 1/D order through m_max available at all resummation orders.
    LargeDContext(int max_order, int m_max, long digits);

    int max_order() const { return max_order_; }
    int m_max() const { return m_max_; }
    long digits() const { return digits_; }

    // Solves the order-by-order stationarity conditions. The leading
    // condition is a degree-N polynomial in t = C_0^(-3); when it has
    // several positive roots the anchor (typically the previous order's
    // leading coefficient C_0) chooses among them, and all roots are
    // reported for audit. Subleading coefficients follow linearly. The
    // energy coefficients use the partition-sum assembly.
    LargeDOrder solve(int order, const std::optional<BigReal>& leading_anchor = std::nullopt) const;

    // Independent assembly of B_0..B_m by truncated power-series arithmetic
    // in 1/D; used to cross-check the partition-sum route.
    std::vector<BigReal> series_route_B(const LargeDOrder& solved) const;

private:
    TruncSeries epsilon_poly(int order, int k) const;
    TruncSeries stationarity_series(int order, const std::vector<Rational>& beta,
                                    const TruncSeries& c_series) const;

    int max_order_;
    int m_max_;
    long digits_;
    WindowedEpsilonTable eps_;
};

// Anchored ladder over N = 1..max_order (each order's C_0 selection anchored
// at the previous order). digits = 0 selects the default precision policy.
std::vector<LargeDOrder> large_d_sweep(int max_order, int m_max, long digits = 0);

struct CoefficientExtrapolation {
    int k = 0;  // which B_k
    ExtrapolationResult extrapolation;
};

// Odd/even extrapolation of each B_k sequence over the sweep's orders.
// Sequences with k >= 3 fluctuate longer, so their fitting tail is not
// allowed to start before high_k_tail_floor.
std::vector<CoefficientExtrapolation> extrapolate_B(const std::vector<LargeDOrder>& sweep,
                                                    int high_k_tail_floor = 40);

}
