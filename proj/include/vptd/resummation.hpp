#pragma once

#include <optional>
#include <vector>

#include "vptd/bender_wu.hpp"
#include "vptd/bigreal.hpp"
#include "vptd/rational.hpp"

namespace vptd {

// Working precision grows linearly with the resummation order so that the
// near-cancellations of high-order optimization leave enough clean digits.
long default_precision_digits(int order);

struct VariationalEnergyInput {
    int order = 0;
    Rational dimension = 1;
    BigReal coupling;       // quartic coupling g > 0 (g = 0 allowed)
    BigReal frequency;      // trial-independent frequency omega >= 0
    BigReal omega;          // variational frequency Omega > 0
    long digits = 64;
};

// Order-N resummed ground-state energy and its first two derivatives with
// respect to the variational frequency. The inner binomial weights are exact
// rationals generated by the product rule, so each term is formed from one
// rounded multiply per factor.
BigReal variational_energy(const VariationalEnergyInput& in);
BigReal variational_energy_domega(const VariationalEnergyInput& in);
BigReal variational_energy_d2omega(const VariationalEnergyInput& in);

// Weights of the strong-coupling projection: reduced_b0 coefficient of
// epsilon_k at order N is beta[k] = binomial((-1-3k)/2, N-k) * (-1)^(N-k).
std::vector<Rational> strong_coupling_weights(int order);

// Reduced leading strong-coupling coefficient
//   b0(Omega0) = sum_k beta[k] * eps_k * Omega0^(1-3k)
// evaluated from exact series data for a rational dimension.
BigReal reduced_b0(int order, const Rational& dimension, const BigReal& omega0, long digits);

enum class StationaryKind {
    extremum,       // zero of d b0 / d Omega
    turning_point,  // fallback: zero of d^2 b0 / d Omega^2
};

struct StationaryCandidate {
    BigReal omega0;
    StationaryKind kind = StationaryKind::extremum;
    BigReal b0;
    BigReal curvature;  // d^2 b0 / d Omega^2 at the candidate
};

struct StrongCouplingResult {
    int order = 0;
    Rational dimension = 1;
    long digits = 0;
    BigReal omega0;
    StationaryKind kind = StationaryKind::extremum;
    BigReal b0;
    BigReal curvature;
    BigReal defining_residual;  // |defining polynomial| at the root, relative to its term sizes
    bool has_uncertainty = false;
    BigReal uncertainty;  // |b0 - b0 at 1.5x digits|, when assessed
    std::vector<StationaryCandidate> candidates;
};

// Holds the exact weak-coupling series for one rational dimension so that a
// whole ladder of orders can reuse it. Candidate selection: with an anchor,
// the extremum closest to it; without, the flattest extremum (smallest
// |curvature|); if no extremum exists at this order, the turning points of
// b0 serve as fallback candidates.
class ResummationContext {
public:
    ResummationContext(int max_order, Rational dimension, long digits);

    int max_order() const { return max_order_; }
    const Rational& dimension() const { return dimension_; }
    long digits() const { return digits_; }
    const Rational& epsilon(int k) const;

    StrongCouplingResult optimize(int order, const std::optional<BigReal>& anchor) const;

private:
    int max_order_;
    Rational dimension_;
    long digits_;
    std::vector<Rational> eps_;
};

// One-shot optimization; re-runs at 1.5x precision to attach an uncertainty
// when requested.
StrongCouplingResult optimize_omega0(int order, const Rational& dimension, long digits,
                                     const std::optional<BigReal>& anchor = std::nullopt,
                                     bool with_uncertainty = false);

struct FirstOrderStrongCoupling {
    BigReal omega0, omega1, omega2;  // Omega(g) ~ g^(1/3) (omega0 + omega1 g^(-2/3) + omega2 g^(-4/3))
    BigReal b0, b1, b2;              // E(g) ~ g^(1/3) (b0 + b1 g^(-2/3) + b2 g^(-4/3))
};

// Closed forms of the order-1 optimization, used as exact cross-checks.
FirstOrderStrongCoupling first_order_strong_coupling(const Rational& dimension,
                                                     const BigReal& frequency, long digits);

}
