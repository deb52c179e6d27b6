#include "vptd/convergence.hpp"

#include <algorithm>
#include <optional>

#include "vptd/error.hpp"

namespace vptd {

const StrongCouplingResult& B0Sequence::at(int order) const {
    if (order < 1 || order > max_order) throw DomainError("B0Sequence::at", "order out of range");
    const SequenceOrder& entry = orders[static_cast<std::size_t>(order - 1)];
    if (!entry.ok) throw DomainError("B0Sequence::at", "order " + std::to_string(order) + " was skipped: " + entry.note);
    return entry.result;
}

namespace {

std::vector<SequenceOrder> run_ladder(const Rational& dimension, int max_order, long digits) {
    ResummationContext ctx(max_order, dimension, digits);
    std::vector<SequenceOrder> out;
    out.reserve(static_cast<std::size_t>(max_order));
    std::optional<BigReal> anchor;
    for (int order = 1; order <= max_order; ++order) {
        SequenceOrder entry;
        entry.order = order;
        try {
            entry.result = ctx.optimize(order, anchor);
            entry.ok = true;
            anchor = entry.result.omega0;
        } catch (const Error& e) {
            entry.ok = false;
            entry.note = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace

B0Sequence b0_sequence(const Rational& dimension, int max_order, long digits,
                       bool with_uncertainty) {
    if (max_order < 1) throw DomainError("b0_sequence", "max_order must be at least 1");
    if (digits == 0) digits = default_precision_digits(max_order);
    B0Sequence seq;
    seq.dimension = dimension;
    seq.digits = digits;
    seq.max_order = max_order;
    seq.orders = run_ladder(dimension, max_order, digits);
    if (with_uncertainty) {
        const std::vector<SequenceOrder> high =
            run_ladder(dimension, max_order, digits + digits / 2);
        for (int i = 0; i < max_order; ++i) {
            SequenceOrder& lo = seq.orders[static_cast<std::size_t>(i)];
            const SequenceOrder& hi = high[static_cast<std::size_t>(i)];
            if (lo.ok && hi.ok) {
                lo.result.uncertainty = abs(hi.result.b0 - lo.result.b0).round_to(16);
                lo.result.has_uncertainty = true;
            }
        }
    }
    return seq;
}

ConvergenceFit fit_convergence_law(const B0Sequence& sequence, const BigReal& reference,
                                   int order_lo, int order_hi) {
    if (order_lo < 1 || order_hi < order_lo) {
        throw DomainError("fit_convergence_law", "invalid order window");
    }
    if (reference.sign() == 0) throw DomainError("fit_convergence_law", "reference must be nonzero");
    const long digits = sequence.digits;
    std::vector<BigReal> xs, ys;
    for (const SequenceOrder& entry : sequence.orders) {
        if (!entry.ok || entry.order < order_lo || entry.order > order_hi) continue;
        const BigReal dev = abs(entry.result.b0 - reference) / abs(reference);
        if (dev.sign() == 0) continue;  // exact agreement has no logarithm
        xs.push_back(cbrt(BigReal::of(static_cast<long>(entry.order), digits)));
        ys.push_back(log(dev));
    }
    const std::size_t n = xs.size();
    if (n < 3) throw DomainError("fit_convergence_law", "need at least 3 usable orders");

    const BigReal nn = BigReal::of(static_cast<long>(n), digits);
    BigReal xbar = BigReal::of(0L, digits), ybar = BigReal::of(0L, digits);
    for (std::size_t i = 0; i < n; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= nn;
    ybar /= nn;
    BigReal sxx = BigReal::of(0L, digits), sxy = BigReal::of(0L, digits);
    for (std::size_t i = 0; i < n; ++i) {
        const BigReal dx = xs[i] - xbar;
        sxx += dx * dx;
        sxy += dx * (ys[i] - ybar);
    }
    if (sxx.sign() == 0) throw DomainError("fit_convergence_law", "degenerate abscissas");
    const BigReal slope = sxy / sxx;  // of y against x; the decay rate is its negative

    ConvergenceFit fit;
    fit.points = static_cast<int>(n);
    fit.order_lo = order_lo;
    fit.order_hi = order_hi;
    fit.slope = -slope;
    fit.intercept = ybar - slope * xbar;

    BigReal ssr = BigReal::of(0L, digits);
    for (std::size_t i = 0; i < n; ++i) {
        const BigReal r = ys[i] - (fit.intercept - fit.slope * xs[i]);
        ssr += r * r;
    }
    if (n > 2) {
        const BigReal variance = ssr / BigReal::of(static_cast<long>(n - 2), digits);
        fit.slope_error = sqrt(variance / sxx);
        fit.intercept_error = sqrt(variance * (BigReal::of(1L, digits) / nn + xbar * xbar / sxx));
    } else {
        fit.slope_error = BigReal::of(0L, digits);
        fit.intercept_error = BigReal::of(0L, digits);
    }
    return fit;
}

namespace {

struct TailSeries {
    std::vector<BigReal> xs;  // N^(1/3)
    std::vector<BigReal> vs;
    int first_order = 0, last_order = 0;
};

// Tail selection: never start before the last sign change of the first
// differences (the asymptotic regime is one-sided per parity), nor before
// earliest_tail_order; cap the length from the back.
TailSeries select_tail(const std::vector<std::pair<int, BigReal>>& pts, long digits,
                       int earliest_tail_order, int max_tail_points) {
    std::size_t sign_start = 0;
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        const int s1 = (pts[i + 1].second - pts[i].second).sign();
        const int s2 = (pts[i + 2].second - pts[i + 1].second).sign();
        if (s1 != 0 && s2 != 0 && s1 != s2) sign_start = i + 1;
    }
    auto apply_bounds = [&](std::size_t s0) {
        std::size_t start = s0;
        while (start < pts.size() && pts[start].first < earliest_tail_order) ++start;
        if (pts.size() - start > static_cast<std::size_t>(max_tail_points)) {
            start = pts.size() - static_cast<std::size_t>(max_tail_points);
        }
        return start;
    };
    std::size_t start = apply_bounds(sign_start);
    // A sign change near the end of the data (a phase slip riding on the
    // decaying approach, not pre-asymptotic oscillation) would leave too
    // little to fit; keep the longer tail and let least squares absorb it.
    if (pts.size() - start < 4) start = apply_bounds(0);
    TailSeries tail;
    for (std::size_t i = start; i < pts.size(); ++i) {
        tail.xs.push_back(cbrt(BigReal::of(static_cast<long>(pts[i].first), digits)));
        tail.vs.push_back(pts[i].second.round_to(digits));
    }
    if (!tail.xs.empty()) {
        tail.first_order = pts[start].first;
        tail.last_order = pts.back().first;
    }
    return tail;
}

struct LinearSolve {
    bool ok = false;
    BigReal vinf, amp, ssr;
};

LinearSolve solve_linear(const TailSeries& t, const BigReal& c, long digits) {
    const std::size_t n = t.xs.size();
    BigReal se = BigReal::of(0L, digits), see = BigReal::of(0L, digits);
    BigReal sv = BigReal::of(0L, digits), sev = BigReal::of(0L, digits);
    std::vector<BigReal> e;
    e.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const BigReal ei = exp(-c * t.xs[i]);
        e.push_back(ei);
        se += ei;
        see += ei * ei;
        sv += t.vs[i];
        sev += ei * t.vs[i];
    }
    const BigReal nn = BigReal::of(static_cast<long>(n), digits);
    LinearSolve out;
    const BigReal det = nn * see - se * se;
    if (det.sign() == 0) return out;
    out.vinf = (sv * see - se * sev) / det;
    out.amp = (nn * sev - se * sv) / det;
    out.ssr = BigReal::of(0L, digits);
    for (std::size_t i = 0; i < n; ++i) {
        const BigReal r = t.vs[i] - out.vinf - out.amp * e[i];
        out.ssr += r * r;
    }
    out.ok = true;
    return out;
}

ParityFit fit_parity(const std::vector<std::pair<int, BigReal>>& pts, long digits,
                     int earliest_tail_order, int max_tail_points) {
    ParityFit fit;
    const TailSeries tail = select_tail(pts, digits, earliest_tail_order, max_tail_points);
    fit.points = static_cast<int>(tail.xs.size());
    fit.first_order = tail.first_order;
    fit.last_order = tail.last_order;
    if (tail.xs.size() < 4) {
        fit.note = "tail has fewer than 4 points";
        return fit;
    }

    // Constant tails need no exponential model.
    bool constant = true;
    for (std::size_t i = 1; i < tail.vs.size() && constant; ++i) {
        if ((tail.vs[i] - tail.vs[0]).sign() != 0) constant = false;
    }
    if (constant) {
        fit.ok = true;
        fit.note = "constant tail";
        fit.limit = tail.vs[0];
        fit.amplitude = BigReal::of(0L, digits);
        fit.rate = BigReal::of(0L, digits);
        return fit;
    }

    // Variable projection: the pair (limit, amplitude) is solved exactly for
    // any candidate rate, which reduces the fit to one dimension. Because
    // the linear parameters are optimal, the envelope theorem gives the
    // exact derivative of the projected sum of squares,
    //   phi'(c) = 2 a sum_i r_i x_i exp(-c x_i),
    // so the minimizing rate is located by sign-change bracketing of phi'
    // followed by bisection, which cannot stall.
    auto phi_prime = [&](const BigReal& c, LinearSolve& lin) -> BigReal {
        lin = solve_linear(tail, c, digits);
        if (!lin.ok) return BigReal::of(0L, digits);
        BigReal acc = BigReal::of(0L, digits);
        for (std::size_t i = 0; i < tail.xs.size(); ++i) {
            const BigReal ei = exp(-c * tail.xs[i]);
            const BigReal ri = tail.vs[i] - lin.vinf - lin.amp * ei;
            acc += ri * tail.xs[i] * ei;
        }
        return BigReal::of(2L, digits) * lin.amp * acc;
    };

    // Sequences this close to geometric decay make the projected objective
    // nearly flat in ln c, and an effective rate in the N^(1/3) variable can
    // reach several times the last x value, so the scan has to go far: c in
    // [0.01, 1000].  Every scanned rate also competes directly by its SSR,
    // which keeps the fit usable when the derivative never changes sign
    // (e.g. a tail whose one-sided approach is broken by a phase slip).
    const BigReal c_lo = BigReal::parse("0.01", digits);
    const BigReal ratio = exp(log(BigReal::parse("1e5", digits)) / BigReal::of(280L, digits));
    BigReal best_c, best_ssr;
    bool have_best = false;
    BigReal c_prev = c_lo;
    LinearSolve lin_scan;
    BigReal d_prev = phi_prime(c_prev, lin_scan);
    if (lin_scan.ok) {
        have_best = true;
        best_c = c_prev;
        best_ssr = lin_scan.ssr;
    }
    for (int j = 1; j <= 280; ++j) {
        const BigReal c_next = c_prev * ratio;
        const BigReal d_next = phi_prime(c_next, lin_scan);
        if (lin_scan.ok && (!have_best || lin_scan.ssr < best_ssr)) {
            have_best = true;
            best_c = c_next;
            best_ssr = lin_scan.ssr;
        }
        if (d_prev.sign() != 0 && d_next.sign() != 0 && d_prev.sign() != d_next.sign()) {
            BigReal lo = c_prev, hi = c_next;
            int sign_lo = d_prev.sign();
            const long max_iter = 4 * digits + 60;
            for (long it = 0; it < max_iter; ++it) {
                BigReal mid = (lo + hi) / BigReal::of(2L, digits);
                const int sm = phi_prime(mid, lin_scan).sign();
                if (sm == 0) {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (sm == sign_lo) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if (hi - lo <= hi * pow_si(BigReal::of(10L, digits), -(digits - 8))) break;
            }
            const BigReal c_star = (lo + hi) / BigReal::of(2L, digits);
            LinearSolve lin_star;
            phi_prime(c_star, lin_star);
            if (lin_star.ok && (!have_best || lin_star.ssr < best_ssr)) {
                have_best = true;
                best_c = c_star;
                best_ssr = lin_star.ssr;
            }
        }
        c_prev = c_next;
        d_prev = d_next;
    }
    if (!have_best) {
        fit.note = "no stationary decay rate in the search window";
        return fit;
    }
    const LinearSolve lin = solve_linear(tail, best_c, digits);
    fit.ok = true;
    fit.limit = lin.vinf;
    fit.amplitude = lin.amp;
    fit.rate = best_c;
    return fit;
}

}  // namespace

ExtrapolationResult odd_even_extrapolate(const std::vector<std::pair<int, BigReal>>& data,
                                         long digits, int earliest_tail_order,
                                         int max_tail_points) {
    if (digits < 16) throw DomainError("odd_even_extrapolate", "need at least 16 digits");
    std::vector<std::pair<int, BigReal>> odd_pts, even_pts;
    for (const auto& p : data) {
        (p.first % 2 != 0 ? odd_pts : even_pts).push_back(p);
    }
    auto by_order = [](const std::pair<int, BigReal>& a, const std::pair<int, BigReal>& b) {
        return a.first < b.first;
    };
    std::sort(odd_pts.begin(), odd_pts.end(), by_order);
    std::sort(even_pts.begin(), even_pts.end(), by_order);

    ExtrapolationResult out;
    out.odd = fit_parity(odd_pts, digits, earliest_tail_order, max_tail_points);
    out.even = fit_parity(even_pts, digits, earliest_tail_order, max_tail_points);
    const BigReal two = BigReal::of(2L, digits);
    if (out.odd.ok && out.even.ok) {
        out.ok = true;
        out.value = (out.odd.limit + out.even.limit) / two;
        out.uncertainty = abs(out.odd.limit - out.even.limit) / two;
    } else if (out.odd.ok || out.even.ok) {
        const ParityFit& only = out.odd.ok ? out.odd : out.even;
        out.ok = true;
        out.note = "single parity only";
        out.value = only.limit;
        // Without the second parity, the residual decay at the tail end is
        // the only available error scale.
        out.uncertainty = abs(only.amplitude) *
                          exp(-only.rate * cbrt(BigReal::of(static_cast<long>(std::max(only.last_order, 1)), digits)));
    } else {
        out.note = "no parity could be fitted (odd: " + out.odd.note + "; even: " + out.even.note + ")";
    }
    return out;
}

}
