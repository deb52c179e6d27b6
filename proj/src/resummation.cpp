#include "vptd/resummation.hpp"

#include <algorithm>
#include <utility>

#include "vptd/error.hpp"
#include "vptd/roots.hpp"

namespace vptd {

long default_precision_digits(int order) {
    if (order < 0) throw DomainError("default_precision_digits", "order must be non-negative");
    const long scaled = (7L * order + 1) / 2 + 40;
    return std::max(64L, scaled);
}

namespace {

std::vector<Rational> exact_epsilons(int order, const Rational& dimension) {
    std::vector<Rational> eps(static_cast<std::size_t>(order) + 1);
    eps[0] = dimension / 2;
    if (order > 0) {
        RationalWaveTable table = bender_wu_table(order, dimension);
        for (int k = 1; k <= order; ++k) eps[static_cast<std::size_t>(k)] = table.epsilon(k);
    }
    return eps;
}

struct EnergyDerivatives {
    BigReal value, first, second;
};

// Shared evaluator: the three Omega-derivatives reuse the same exact binomial
// weights, so computing them together costs one pass over the double sum.
EnergyDerivatives energy_with_derivatives(const VariationalEnergyInput& in) {
    if (in.order < 0) throw DomainError("variational_energy", "order must be non-negative");
    if (!(in.omega.sign() > 0)) throw DomainError("variational_energy", "Omega must be positive");
    if (in.coupling.sign() < 0) throw DomainError("variational_energy", "coupling must be non-negative");
    const long digits = in.digits;
    const std::vector<Rational> eps = exact_epsilons(in.order, in.dimension);

    const BigReal one = BigReal::of(1L, digits);
    BigReal omega2 = in.frequency * in.frequency;
    omega2 = omega2.round_to(digits);
    const BigReal inv_om = one / in.omega;
    const BigReal inv_om2 = inv_om * inv_om;
    const BigReal inv_om3 = inv_om2 * inv_om;
    const BigReal x = omega2 * inv_om2 - one;           // omega^2/Omega^2 - 1
    const BigReal xp = BigReal::of(-2L, digits) * omega2 * inv_om3;   // d x / d Omega
    const BigReal xpp = BigReal::of(6L, digits) * omega2 * inv_om2 * inv_om2;

    EnergyDerivatives out{BigReal::of(0L, digits), BigReal::of(0L, digits), BigReal::of(0L, digits)};
    BigReal g_pow = one;                                // g^k
    BigReal om_pow = in.omega;                          // Omega^(1-3k)
    for (int k = 0; k <= in.order; ++k) {
        const Rational alpha = rational_of(1 - 3L * k, 2);
        Rational binom = 1;
        BigReal s0 = BigReal::of(0L, digits);
        BigReal s1 = BigReal::of(0L, digits);
        BigReal s2 = BigReal::of(0L, digits);
        BigReal x_pow = one;                            // x^l
        BigReal x_pow_prev = BigReal::of(0L, digits);   // x^(l-1)
        BigReal x_pow_prev2 = BigReal::of(0L, digits);  // x^(l-2)
        for (int l = 0; l <= in.order - k; ++l) {
            const BigReal w = to_bigreal(binom, digits);
            s0 += w * x_pow;
            if (l >= 1) s1 += w * BigReal::of(static_cast<long>(l), digits) * x_pow_prev;
            if (l >= 2) {
                s2 += w * BigReal::of(static_cast<long>(l) * (l - 1), digits) * x_pow_prev2;
            }
            binom *= alpha - l;
            binom /= l + 1;
            x_pow_prev2 = x_pow_prev;
            x_pow_prev = x_pow;
            x_pow = x_pow * x;
        }
        // S, S', S'' with respect to Omega.
        const BigReal S = s0;
        const BigReal Sp = s1 * xp;
        const BigReal Spp = s2 * xp * xp + s1 * xpp;

        const BigReal ek = to_bigreal(eps[static_cast<std::size_t>(k)], digits);
        const BigReal head = ek * g_pow;
        const long p = 1 - 3L * k;
        const BigReal pw = BigReal::of(p, digits);
        out.value += head * om_pow * S;
        out.first += head * (pw * om_pow * inv_om * S + om_pow * Sp);
        out.second += head * (pw * BigReal::of(p - 1, digits) * om_pow * inv_om2 * S +
                              BigReal::of(2 * p, digits) * om_pow * inv_om * Sp + om_pow * Spp);
        g_pow = g_pow * in.coupling;
        om_pow = om_pow * inv_om3;
    }
    return out;
}

}  // namespace

BigReal variational_energy(const VariationalEnergyInput& in) {
    return energy_with_derivatives(in).value;
}

BigReal variational_energy_domega(const VariationalEnergyInput& in) {
    return energy_with_derivatives(in).first;
}

BigReal variational_energy_d2omega(const VariationalEnergyInput& in) {
    return energy_with_derivatives(in).second;
}

std::vector<Rational> strong_coupling_weights(int order) {
    if (order < 0) throw DomainError("strong_coupling_weights", "order must be non-negative");
    std::vector<Rational> beta(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        Rational b = binomial(rational_of(-1 - 3L * k, 2), order - k);
        if ((order - k) % 2 != 0) b = -b;
        beta[static_cast<std::size_t>(k)] = b;
    }
    return beta;
}

namespace {

BigReal reduced_b0_from(const std::vector<Rational>& eps, const std::vector<Rational>& beta,
                        int order, const BigReal& omega0, long digits) {
    const BigReal inv3 = pow_si(omega0, -3);
    BigReal om_pow = omega0;
    BigReal acc = BigReal::of(0L, digits);
    for (int k = 0; k <= order; ++k) {
        acc += to_bigreal(beta[static_cast<std::size_t>(k)] * eps[static_cast<std::size_t>(k)],
                          digits) *
               om_pow;
        om_pow = om_pow * inv3;
    }
    return acc;
}

}  // namespace

BigReal reduced_b0(int order, const Rational& dimension, const BigReal& omega0, long digits) {
    if (!(omega0.sign() > 0)) throw DomainError("reduced_b0", "Omega0 must be positive");
    const std::vector<Rational> eps = exact_epsilons(order, dimension);
    const std::vector<Rational> beta = strong_coupling_weights(order);
    return reduced_b0_from(eps, beta, order, omega0, digits);
}

ResummationContext::ResummationContext(int max_order, Rational dimension, long digits)
    : max_order_(max_order), dimension_(std::move(dimension)), digits_(digits) {
    if (max_order < 0) throw DomainError("ResummationContext", "max order must be non-negative");
    if (digits < 16) throw DomainError("ResummationContext", "need at least 16 digits");
    eps_ = exact_epsilons(max_order_, dimension_);
}

const Rational& ResummationContext::epsilon(int k) const {
    if (k < 0 || k > max_order_) throw DomainError("ResummationContext::epsilon", "order out of range");
    return eps_[static_cast<std::size_t>(k)];
}

StrongCouplingResult ResummationContext::optimize(int order,
                                                  const std::optional<BigReal>& anchor) const {
    if (order < 1 || order > max_order_) {
        throw DomainError("ResummationContext::optimize", "order out of range");
    }
    const long digits = digits_;
    const std::vector<Rational> beta = strong_coupling_weights(order);

    // Stationarity and curvature in the cube u = Omega^3:
    //   d b0 / d Omega   = Omega^(-3N)   * P1(u),  P1 coeff of u^(N-k): beta_k (1-3k) eps_k
    //   d^2 b0 / dOmega^2 = Omega^(-3N-1) * P2(u),  P2 coeff of u^(N-k): beta_k (1-3k)(-3k) eps_k
    RealPolynomial p1, p2;
    p1.c.assign(static_cast<std::size_t>(order) + 1, BigReal::of(0L, digits));
    p2.c.assign(static_cast<std::size_t>(order) + 1, BigReal::of(0L, digits));
    for (int k = 0; k <= order; ++k) {
        const Rational a = beta[static_cast<std::size_t>(k)] * (1 - 3L * k) *
                           eps_[static_cast<std::size_t>(k)];
        p1.c[static_cast<std::size_t>(order - k)] = to_bigreal(a, digits);
        p2.c[static_cast<std::size_t>(order - k)] = to_bigreal(a * (-3L * k), digits);
    }

    const BigReal u_first = to_bigreal(2 * (dimension_ + 2), digits);
    const BigReal lo_scale = BigReal::parse("1e-3", digits);
    const BigReal hi_scale = BigReal::parse("1e3", digits);

    auto collect = [&](const RealPolynomial& poly) {
        std::vector<BigReal> roots =
            roots_on_geometric_grid(poly, u_first * lo_scale, u_first * hi_scale, 150, digits);
        if (anchor) {
            BigReal u_anchor = pow_si(*anchor, 3);
            std::vector<BigReal> extra = roots_on_geometric_grid(
                poly, u_anchor * BigReal::parse("0.05", digits),
                u_anchor * BigReal::of(20L, digits), 300, digits);
            roots.insert(roots.end(), extra.begin(), extra.end());
        }
        return merge_roots(std::move(roots), digits);
    };

    StrongCouplingResult result;
    result.order = order;
    result.dimension = dimension_;
    result.digits = digits;

    // All stationary points of both kinds are retained for audit.  The
    // selection key measures residual sensitivity: the second derivative at
    // an extremum, the slope at an inflection.
    std::vector<StationaryCandidate> candidates;
    std::vector<BigReal> selection_key;
    auto add_kind = [&](const RealPolynomial& poly, StationaryKind cand_kind) {
        for (const BigReal& u : collect(poly)) {
            StationaryCandidate cand;
            cand.omega0 = cbrt(u);
            cand.kind = cand_kind;
            cand.b0 = reduced_b0_from(eps_, beta, order, cand.omega0, digits);
            cand.curvature = p2.eval(u) * pow_si(cand.omega0, -3 * order - 1);
            if (cand_kind == StationaryKind::extremum) {
                selection_key.push_back(abs(cand.curvature));
            } else {
                selection_key.push_back(abs(p1.eval(u) * pow_si(cand.omega0, -3 * order)));
            }
            candidates.push_back(std::move(cand));
        }
    };
    add_kind(p1, StationaryKind::extremum);
    add_kind(p2, StationaryKind::turning_point);
    if (candidates.empty()) {
        throw NoAdmissibleRoot("ResummationContext::optimize",
                               "no stationary or turning point of b0 in the search window");
    }

    // High orders develop an interleaved chain of stationary points on the
    // optimization plateau, and the accuracy of the approximant improves
    // toward the inner (small-Omega) edge, where the oscillation of the
    // truncated family is weakest.  Among extrema the flattest candidate
    // (smallest |curvature|) is the classic minimal-sensitivity choice; it
    // coincides with the innermost *settled* extremum because curvature
    // grows outward along the chain, while an extremum freshly created at
    // the plateau edge betrays itself by a curvature above the established
    // minimum and is thereby skipped.  Inflections carry no such
    // certificate, so among them the innermost one wins.  The accepted
    // stationary point is whichever of the two winners lies deeper inside;
    // a tie goes to the extremum.
    std::optional<std::size_t> best_ext;
    std::optional<std::size_t> best_turn;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].kind == StationaryKind::extremum) {
            if (!best_ext || selection_key[i] < selection_key[*best_ext]) best_ext = i;
        } else {
            if (!best_turn || candidates[i].omega0 < candidates[*best_turn].omega0) best_turn = i;
        }
    }
    std::size_t pick;
    if (best_ext && best_turn) {
        pick = (candidates[*best_ext].omega0 <= candidates[*best_turn].omega0) ? *best_ext
                                                                               : *best_turn;
    } else {
        pick = best_ext ? *best_ext : *best_turn;
    }
    result.kind = candidates[pick].kind;
    const RealPolynomial& defining =
        (result.kind == StationaryKind::extremum) ? p1 : p2;

    const StationaryCandidate& sel = candidates[pick];
    result.omega0 = sel.omega0;
    result.b0 = sel.b0;
    result.curvature = sel.curvature;

    // Residual of the defining polynomial at the accepted root, relative to
    // the magnitude of its largest term; certifies the polishing converged.
    {
        const BigReal u = pow_si(sel.omega0, 3);
        BigReal scale = BigReal::of(0L, digits);
        BigReal u_pow = BigReal::of(1L, digits);
        for (std::size_t i = 0; i < defining.c.size(); ++i) {
            scale = max(scale, abs(defining.c[i] * u_pow));
            u_pow = u_pow * u;
        }
        if (scale.sign() == 0) scale = BigReal::of(1L, digits);
        result.defining_residual = abs(defining.eval(u)) / scale;
    }
    result.candidates = std::move(candidates);
    return result;
}

StrongCouplingResult optimize_omega0(int order, const Rational& dimension, long digits,
                                     const std::optional<BigReal>& anchor, bool with_uncertainty) {
    ResummationContext ctx(order, dimension, digits);
    StrongCouplingResult result = ctx.optimize(order, anchor);
    if (with_uncertainty) {
        const long digits_hi = digits + digits / 2;
        ResummationContext ctx_hi(order, dimension, digits_hi);
        StrongCouplingResult check = ctx_hi.optimize(order, result.omega0);
        result.uncertainty = abs(check.b0 - result.b0).round_to(16);
        result.has_uncertainty = true;
    }
    return result;
}

FirstOrderStrongCoupling first_order_strong_coupling(const Rational& dimension,
                                                     const BigReal& frequency, long digits) {
    if (dimension <= 0) throw DomainError("first_order_strong_coupling", "dimension must be positive");
    FirstOrderStrongCoupling out;
    const BigReal d = to_bigreal(Rational(dimension), digits);
    const BigReal dp2 = to_bigreal(dimension + 2, digits);
    const BigReal w2 = frequency * frequency;
    const BigReal w4 = w2 * w2;
    const BigReal cbr = cbrt(BigReal::of(2L, digits) * dp2);  // (2(D+2))^(1/3)
    out.omega0 = cbr;
    out.omega1 = w2 / (BigReal::of(3L, digits) * cbr);
    out.omega2 = w4 / (BigReal::of(108L, digits) * dp2);
    out.b0 = BigReal::of(3L, digits) * d / BigReal::of(8L, digits) * cbr;
    out.b1 = d * w2 / (BigReal::of(4L, digits) * cbr);
    out.b2 = -(d * w4) / (BigReal::of(48L, digits) * dp2);
    return out;
}

}
