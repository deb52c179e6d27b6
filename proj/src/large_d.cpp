#include "vptd/large_d.hpp"

#include <algorithm>

#include "vptd/error.hpp"
#include "vptd/resummation.hpp"
#include "vptd/roots.hpp"

namespace vptd {

namespace {

// Sums f(partition) over the integer partitions of m, presented as
// multiplicity vectors a[l] = a_l with sum l*a_l = m.
template <class F>
void for_each_partition(int m, std::vector<int>& mult, int largest, F&& visit) {
    if (m == 0) {
        visit(mult);
        return;
    }
    for (int part = std::min(largest, m); part >= 1; --part) {
        ++mult[static_cast<std::size_t>(part - 1)];
        for_each_partition(m - part, mult, part, visit);
        --mult[static_cast<std::size_t>(part - 1)];
    }
}

}  // namespace

BigReal multinomial_weight(int m, int k, const std::vector<BigReal>& ratios, long digits) {
    if (m < 0 || k < 1) throw DomainError("multinomial_weight", "need m >= 0 and k >= 1");
    if (static_cast<std::size_t>(m) > ratios.size()) {
        throw DomainError("multinomial_weight", "not enough frequency ratios for this depth");
    }
    BigReal total = BigReal::of(0L, digits);
    std::vector<int> mult(static_cast<std::size_t>(std::max(m, 1)), 0);
    for_each_partition(m, mult, m, [&](const std::vector<int>& a) {
        long pieces = 0;  // total number of factors drawn from the tail of C/C_0
        Rational denom = 1;
        for (int l = 1; l <= m; ++l) {
            const int al = a[static_cast<std::size_t>(l - 1)];
            pieces += al;
            for (int i = 2; i <= al; ++i) denom *= i;  // a_l!
        }
        // (-1)^pieces (3k-2+pieces)! / (3k-2)! is the falling-binomial weight
        // of choosing `pieces` tail factors from the power 1-3k.
        Rational head = 1;
        for (long i = 1; i <= pieces; ++i) head *= 3L * k - 2 + i;
        if (pieces % 2 != 0) head = -head;
        BigReal term = to_bigreal(head / denom, digits);
        for (int l = 1; l <= m; ++l) {
            const int al = a[static_cast<std::size_t>(l - 1)];
            if (al > 0) term *= pow_si(ratios[static_cast<std::size_t>(l - 1)], al);
        }
        total += term;
    });
    return total;
}

LargeDContext::LargeDContext(int max_order, int m_max, long digits)
    : max_order_(max_order),
      m_max_(m_max),
      digits_(digits),
      eps_(max_order, static_cast<std::size_t>(m_max) + 2, digits) {
    if (max_order < 1) throw DomainError("LargeDContext", "max_order must be at least 1");
    if (m_max < 0) throw DomainError("LargeDContext", "m_max must be non-negative");
    if (digits < 16) throw DomainError("LargeDContext", "need at least 16 digits");
}

// P_k as a truncated series in x = 1/D: coefficient of x^i is the D-power
// k+1-i coefficient of the series term epsilon_k (epsilon_0 contributes the
// constant 1/2).
TruncSeries LargeDContext::epsilon_poly(int order, int k) const {
    const std::size_t window = static_cast<std::size_t>(m_max_) + 1;
    TruncSeries p(window, digits_);
    if (k == 0) {
        p[0] = to_bigreal(rational_of(1, 2), digits_);
        return p;
    }
    (void)order;
    for (std::size_t i = 0; i < window; ++i) {
        const long power = k + 1 - static_cast<long>(i);
        if (power < 1) break;
        p[i] = eps_.coeff(k, power);
    }
    return p;
}

// The expansion of the stationarity condition d b0 / d Omega0 = 0 in x:
//   f(x) = sum_k beta_k (1-3k) P_k(x) C(x)^(-3k)
// must vanish through order m_max; its coefficients determine C_j.
TruncSeries LargeDContext::stationarity_series(int order, const std::vector<Rational>& beta,
                                               const TruncSeries& c_series) const {
    const std::size_t window = static_cast<std::size_t>(m_max_) + 1;
    TruncSeries f(window, digits_);
    f[0] = to_bigreal(beta[0] / 2, digits_);
    const TruncSeries y = c_series.inverse();
    const TruncSeries y3 = y * y * y;
    TruncSeries w = y3;  // C^(-3k)
    for (int k = 1; k <= order; ++k) {
        TruncSeries term = epsilon_poly(order, k) * w;
        term.scale(to_bigreal(beta[static_cast<std::size_t>(k)] * (1 - 3L * k), digits_));
        f += term;
        if (k < order) w = w * y3;
    }
    return f;
}

LargeDOrder LargeDContext::solve(int order, const std::optional<BigReal>& leading_anchor) const {
    if (order < 1 || order > max_order_) throw DomainError("LargeDContext::solve", "order out of range");
    const std::vector<Rational> beta = strong_coupling_weights(order);

    LargeDOrder out;
    out.order = order;
    out.m_max = m_max_;
    out.digits = digits_;

    // Leading condition: h(t) = sum_k beta_k (1-3k) e_k t^k with t = C_0^(-3)
    // and e_k the top D-coefficient of the series term (e_0 = 1/2).
    RealPolynomial h;
    h.c.assign(static_cast<std::size_t>(order) + 1, BigReal::of(0L, digits_));
    h.c[0] = to_bigreal(beta[0] / 2, digits_);
    for (int k = 1; k <= order; ++k) {
        h.c[static_cast<std::size_t>(k)] =
            to_bigreal(beta[static_cast<std::size_t>(k)] * (1 - 3L * k), digits_) *
            eps_.coeff(k, k + 1);
    }
    out.leading_roots = roots_on_geometric_grid(h, BigReal::parse("1e-4", digits_),
                                                BigReal::parse("1e2", digits_), 200, digits_);
    if (out.leading_roots.empty()) {
        throw NoAdmissibleRoot("LargeDContext::solve", "leading condition has no positive root");
    }
    std::size_t pick = 0;
    if (out.leading_roots.size() > 1) {
        if (!leading_anchor) {
            throw NoAdmissibleRoot("LargeDContext::solve",
                                   "leading condition has several positive roots and no anchor "
                                   "was given to choose among them");
        }
        // The anchor is the previous order's C_0; compare in t = C_0^(-3).
        const BigReal t_anchor = pow_si(*leading_anchor, -3);
        BigReal best = abs(out.leading_roots[0] - t_anchor);
        for (std::size_t i = 1; i < out.leading_roots.size(); ++i) {
            const BigReal d = abs(out.leading_roots[i] - t_anchor);
            if (d < best) {
                best = d;
                pick = i;
            }
        }
    }
    const BigReal t = out.leading_roots[pick];
    const BigReal c0 = BigReal::of(1L, digits_) / cbrt(t);

    // Subleading conditions are linear in the unknown coefficient, with the
    // common factor L = -3 t h'(t) / C_0 from perturbing C^(-3k).
    const BigReal hp = h.derivative().eval(t);
    const BigReal ell = BigReal::of(-3L, digits_) * t * hp / c0;
    {
        BigReal h_scale = BigReal::of(0L, digits_);
        BigReal t_pow = BigReal::of(1L, digits_);
        for (const auto& coeff : h.c) {
            h_scale = max(h_scale, abs(coeff * t_pow));
            t_pow = t_pow * t;
        }
        if (abs(ell) <= h_scale * pow_si(BigReal::of(10L, digits_), -(digits_ - 20))) {
            throw NoConvergence("LargeDContext::solve",
                                "leading root is (numerically) degenerate; subleading "
                                "coefficients are not determined");
        }
    }

    const std::size_t window = static_cast<std::size_t>(m_max_) + 1;
    TruncSeries c_series(window, digits_);
    c_series[0] = c0;
    for (int q = 1; q <= m_max_; ++q) {
        // With C_q still zero, the x^q residual is the affine part; dividing
        // by L completes the Newton-exact linear solve.
        const TruncSeries f = stationarity_series(order, beta, c_series);
        c_series[static_cast<std::size_t>(q)] = -f[static_cast<std::size_t>(q)] / ell;
    }

    out.C.reserve(window);
    for (std::size_t i = 0; i < window; ++i) out.C.push_back(c_series[i]);

    // Residual audit of every solved condition, relative to the size of the
    // leading-condition terms.
    {
        const TruncSeries f = stationarity_series(order, beta, c_series);
        BigReal h_scale = BigReal::of(0L, digits_);
        BigReal t_pow = BigReal::of(1L, digits_);
        for (const auto& coeff : h.c) {
            h_scale = max(h_scale, abs(coeff * t_pow));
            t_pow = t_pow * t;
        }
        BigReal worst = BigReal::of(0L, digits_);
        for (std::size_t q = 0; q < window; ++q) worst = max(worst, abs(f[q]));
        out.stationarity_residual = worst / h_scale;
    }

    // Partition-sum assembly of the energy coefficients.
    std::vector<BigReal> ratios;
    ratios.reserve(static_cast<std::size_t>(m_max_));
    for (int l = 1; l <= m_max_; ++l) {
        ratios.push_back(out.C[static_cast<std::size_t>(l)] / c0);
    }
    out.B.reserve(window);
    for (int q = 0; q <= m_max_; ++q) {
        BigReal bq = to_bigreal(beta[0] / 2, digits_) * out.C[static_cast<std::size_t>(q)];
        for (int k = 1; k <= order; ++k) {
            BigReal inner = BigReal::of(0L, digits_);
            for (int m = std::max(0, q - k); m <= q; ++m) {
                inner += multinomial_weight(m, k, ratios, digits_) *
                         eps_.coeff(k, k + 1 + m - q);
            }
            bq += to_bigreal(beta[static_cast<std::size_t>(k)], digits_) *
                  pow_si(c0, 1 - 3L * k) * inner;
        }
        out.B.push_back(bq);
    }
    return out;
}

std::vector<BigReal> LargeDContext::series_route_B(const LargeDOrder& solved) const {
    if (solved.order < 1 || solved.order > max_order_) {
        throw DomainError("LargeDContext::series_route_B", "order out of range");
    }
    const std::vector<Rational> beta = strong_coupling_weights(solved.order);
    const std::size_t window = static_cast<std::size_t>(m_max_) + 1;
    TruncSeries c_series(window, digits_);
    for (std::size_t i = 0; i < window; ++i) c_series[i] = solved.C[i];

    TruncSeries g(window, digits_);
    {
        TruncSeries head = c_series;
        head.scale(to_bigreal(beta[0] / 2, digits_));
        g += head;
    }
    const TruncSeries y3 = [&] {
        const TruncSeries y = c_series.inverse();
        return y * y * y;
    }();
    TruncSeries w = c_series * y3;  // C^(1-3k) for k = 1
    for (int k = 1; k <= solved.order; ++k) {
        TruncSeries term = epsilon_poly(solved.order, k) * w;
        term.scale(to_bigreal(beta[static_cast<std::size_t>(k)], digits_));
        g += term;
        if (k < solved.order) w = w * y3;
    }
    std::vector<BigReal> b;
    b.reserve(window);
    for (std::size_t i = 0; i < window; ++i) b.push_back(g[i]);
    return b;
}

std::vector<LargeDOrder> large_d_sweep(int max_order, int m_max, long digits) {
    if (digits == 0) digits = default_precision_digits(max_order);
    LargeDContext ctx(max_order, m_max, digits);
    std::vector<LargeDOrder> out;
    out.reserve(static_cast<std::size_t>(max_order));
    std::optional<BigReal> anchor;
    for (int order = 1; order <= max_order; ++order) {
        LargeDOrder solved = ctx.solve(order, anchor);
        anchor = solved.C[0];
        out.push_back(std::move(solved));
    }
    return out;
}

std::vector<CoefficientExtrapolation> extrapolate_B(const std::vector<LargeDOrder>& sweep,
                                                    int high_k_tail_floor) {
    if (sweep.empty()) throw DomainError("extrapolate_B", "empty sweep");
    const int m_max = sweep.front().m_max;
    const long digits = sweep.front().digits;
    std::vector<CoefficientExtrapolation> out;
    for (int k = 1; k <= m_max; ++k) {
        std::vector<std::pair<int, BigReal>> data;
        data.reserve(sweep.size());
        for (const LargeDOrder& entry : sweep) {
            data.emplace_back(entry.order, entry.B[static_cast<std::size_t>(k)]);
        }
        CoefficientExtrapolation ce;
        ce.k = k;
        ce.extrapolation = odd_even_extrapolate(data, digits, k >= 3 ? high_k_tail_floor : 0);
        out.push_back(std::move(ce));
    }
    return out;
}

}
