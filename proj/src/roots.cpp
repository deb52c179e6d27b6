#include "vptd/roots.hpp"

#include <algorithm>

#include "vptd/error.hpp"

namespace vptd {

long RealPolynomial::degree() const {
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)].sign() != 0) return i;
    }
    return -1;
}

BigReal RealPolynomial::eval(const BigReal& u) const {
    if (c.empty()) return BigReal::of(0L, u.digits());
    BigReal acc = c.back();
    for (long i = static_cast<long>(c.size()) - 2; i >= 0; --i) {
        acc *= u;
        acc += c[static_cast<std::size_t>(i)];
    }
    return acc;
}

RealPolynomial RealPolynomial::derivative() const {
    RealPolynomial d;
    if (c.size() <= 1) return d;
    d.c.reserve(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) {
        BigReal t = c[i];
        t *= BigReal::of(static_cast<long>(i), t.digits());
        d.c.push_back(t);
    }
    return d;
}

namespace {

// Newton iteration confined to a sign-change bracket: any step that leaves
// the bracket (or fails to shrink it) falls back to bisection, so progress
// is guaranteed and the quadratic endgame supplies the digits.
BigReal refine_root(const RealPolynomial& p, const RealPolynomial& dp, BigReal lo, BigReal hi,
                    int sign_lo, long digits) {
    const BigReal rel_stop = pow_si(BigReal::of(10L, digits), -(digits - 2));
    BigReal x = lo + hi;
    x /= BigReal::of(2L, digits);
    const long max_iter = 120 + 4 * digits;
    for (long iter = 0; iter < max_iter; ++iter) {
        BigReal f = p.eval(x);
        const int sf = f.sign();
        if (sf == 0) return x;
        if (sf == sign_lo) {
            lo = x;
        } else {
            hi = x;
        }
        BigReal width = hi - lo;
        if (width <= abs(x) * rel_stop) return x;
        BigReal next;
        BigReal fp = dp.eval(x);
        bool bisect = (fp.sign() == 0);
        if (!bisect) {
            next = x - f / fp;
            bisect = !(next > lo && next < hi);
        }
        if (bisect) {
            next = lo + hi;
            next /= BigReal::of(2L, digits);
        }
        x = next;
    }
    throw NoConvergence("refine_root", "root polishing exhausted its iteration budget");
}

}  // namespace

std::vector<BigReal> roots_on_geometric_grid(const RealPolynomial& p, const BigReal& lo,
                                             const BigReal& hi, int points_per_decade,
                                             long digits) {
    if (!(lo.sign() > 0) || !(hi > lo)) {
        throw DomainError("roots_on_geometric_grid", "need 0 < lo < hi");
    }
    if (points_per_decade < 2) {
        throw DomainError("roots_on_geometric_grid", "need at least 2 points per decade");
    }
    std::vector<BigReal> roots;
    if (p.degree() < 1) return roots;
    const RealPolynomial dp = p.derivative();
    const BigReal ratio =
        exp(log(BigReal::of(10L, digits)) / BigReal::of(static_cast<long>(points_per_decade), digits));

    BigReal u = lo;
    BigReal f_prev = p.eval(u);
    if (f_prev.sign() == 0) roots.push_back(u);
    while (u < hi) {
        BigReal u_next = u * ratio;
        if (u_next > hi) u_next = hi;
        BigReal f_next = p.eval(u_next);
        if (f_next.sign() == 0) {
            roots.push_back(u_next);
        } else if (f_prev.sign() != 0 && f_next.sign() != f_prev.sign()) {
            roots.push_back(refine_root(p, dp, u, u_next, f_prev.sign(), digits));
        }
        u = u_next;
        f_prev = f_next;
    }
    return merge_roots(std::move(roots), digits);
}

std::vector<BigReal> merge_roots(std::vector<BigReal> roots, long digits) {
    std::sort(roots.begin(), roots.end());
    std::vector<BigReal> out;
    // Copies of one root refined from overlapping search grids agree only to
    // the local conditioning of the polynomial, which for nearly flat
    // plateau roots is far worse than the working precision; a quarter of
    // the working digits separates such copies from genuinely distinct
    // roots with a wide margin on both sides.
    const BigReal rel = pow_si(BigReal::of(10L, digits), -std::max(16L, digits / 4));
    for (auto& r : roots) {
        if (!out.empty()) {
            BigReal gap = r - out.back();
            if (gap <= max(abs(r), abs(out.back())) * rel) continue;
        }
        out.push_back(std::move(r));
    }
    return out;
}

}
