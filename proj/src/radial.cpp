#include "vptd/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "vptd/error.hpp"

namespace vptd {

namespace {

// The sweeps run in long double: the 64-bit mantissa keeps the roundoff
// accumulated over ~10^5 Numerov steps near 1e-17 relative, one safe
// decade below the 12-digit certification ceiling of the interface.
using real = long double;

constexpr real kInnerStart = 1e-6L;   // series anchor x_0
constexpr real kRenormAt = 1e2400L;   // rescale sweeps growing past this

// Uniform grid with the E-independent part of the reduced equation
//   u'' = f(x) u,   f(x) = omega^2 x^2 + 2 g x^4 + (D-1)(D-3)/(4 x^2) - 2 E
// precomputed, so one shot at energy E only forms w[j] - 2E per step.
struct Grid {
    int n = 0;
    real h = 0;
    std::vector<real> x;    // abscissas, x[0] = kInnerStart
    std::vector<real> w;    // f(x) + 2E
    std::vector<real> xnu;  // x^((D-1)/2), the indicial prefactor
    int series_end = 0;     // grid index up to which the series supplies u
};

struct Reduced {
    int dimension = 0;
    real omega2 = 0;
    real two_g = 0;
    real centrifugal = 0;  // (D-1)(D-3)/4
    real x_max = 0;
};

Grid build_grid(const Reduced& r, int n) {
    Grid g;
    g.n = n;
    g.h = (r.x_max - kInnerStart) / static_cast<real>(n - 1);
    g.x.resize(static_cast<std::size_t>(n));
    g.w.resize(static_cast<std::size_t>(n));
    g.xnu.resize(static_cast<std::size_t>(n));
    const real nu = 0.5L * static_cast<real>(r.dimension - 1);
    for (int j = 0; j < n; ++j) {
        const real x = kInnerStart + g.h * static_cast<real>(j);
        const real x2 = x * x;
        g.x[static_cast<std::size_t>(j)] = x;
        g.w[static_cast<std::size_t>(j)] =
            r.omega2 * x2 + r.two_g * x2 * x2 + r.centrifugal / x2;
        g.xnu[static_cast<std::size_t>(j)] = powl(x, nu);
    }
    // Hand the first stretch of the grid to the power series: near the
    // origin the solution behaves as x^nu with fractional nu in even
    // dimensions, so the finite-difference stencil's x^(nu-6) derivative
    // growth would contaminate the sweep.  The switch point sits well
    // inside the shortest length scale of the potential, where the series
    // still converges in a couple dozen terms.
    real scale = r.x_max / 6.0L;
    if (r.two_g > 0) scale = std::min(scale, powl(r.two_g, -1.0L / 6.0L));
    if (r.omega2 > 0) scale = std::min(scale, powl(r.omega2, -0.25L));
    const real x_switch = 0.35L * scale;
    int s = static_cast<int>((x_switch - kInnerStart) / g.h) + 1;
    g.series_end = std::clamp(s, 8, n / 4);
    return g;
}

// Coefficients a_k of the regular Frobenius solution
//   u(x) = x^nu sum_k a_k x^(2k),  a_0 = 1,
//   a_k = (-2E a_(k-1) + omega^2 a_(k-2) + 2g a_(k-3)) / (2k (D-2+2k)).
// The recursion denominators never vanish for D >= 1 and the series
// converges for every x (the potential is entire apart from the x^-2 term
// absorbed into nu), so truncation is set by the largest abscissa used.
std::vector<real> series_coefficients(const Reduced& r, real E, real x_top) {
    std::vector<real> a;
    a.push_back(1.0L);
    const real x2 = x_top * x_top;
    real xp = 1.0L;
    real sum = 1.0L;
    for (int k = 1; k <= 200; ++k) {
        const real am1 = a[static_cast<std::size_t>(k - 1)];
        const real am2 = k >= 2 ? a[static_cast<std::size_t>(k - 2)] : 0.0L;
        const real am3 = k >= 3 ? a[static_cast<std::size_t>(k - 3)] : 0.0L;
        const real den =
            2.0L * static_cast<real>(k) * static_cast<real>(r.dimension - 2 + 2 * k);
        a.push_back((-2.0L * E * am1 + r.omega2 * am2 + r.two_g * am3) / den);
        xp *= x2;
        const real term = fabsl(a.back() * xp);
        sum += term;
        if (k >= 8 && term < 1e-24L * sum) break;
    }
    return a;
}

// One outward sweep at energy E: series across [x_0, x_switch], Numerov
// beyond, sign changes counted over the whole grid.  The count equals the
// number of discrete Dirichlet eigenvalues below E (Sturm oscillation), so
// bisection on it pins the nodeless ground state to the working-precision
// floor without any separate matching function.
int count_nodes(const Grid& g, const Reduced& r, real E) {
    const std::size_t S = static_cast<std::size_t>(g.series_end);
    const std::vector<real> a =
        series_coefficients(r, E, g.x[S]);
    int nodes = 0;
    real u_prev = 0;
    real t_prev = 0, t_cur = 0;  // T_j = (1 - h^2 f_j / 12) u_j
    const real h2 = g.h * g.h;
    const real h2_12 = h2 / 12.0L;
    for (std::size_t j = 0; j <= S; ++j) {
        const real x2 = g.x[j] * g.x[j];
        real poly = 0;
        for (std::size_t k = a.size(); k-- > 0;) poly = poly * x2 + a[k];
        const real u = g.xnu[j] * poly;
        if (j > 0 && u * u_prev < 0) ++nodes;
        const real f = g.w[j] - 2.0L * E;
        t_prev = t_cur;
        t_cur = (1.0L - h2_12 * f) * u;
        u_prev = u;
    }
    real u_cur = u_prev;
    for (std::size_t j = S + 1; j < static_cast<std::size_t>(g.n); ++j) {
        const real f_prev = g.w[j - 1] - 2.0L * E;
        const real t_next = 2.0L * t_cur - t_prev + h2 * f_prev * u_cur;
        const real f = g.w[j] - 2.0L * E;
        const real u = t_next / (1.0L - h2_12 * f);
        if (u * u_cur < 0) ++nodes;
        t_prev = t_cur;
        t_cur = t_next;
        u_cur = u;
        if (fabsl(t_cur) > kRenormAt) {
            const real s = 1.0L / fabsl(t_cur);
            t_prev *= s;
            t_cur *= s;
            u_cur *= s;
        }
    }
    return nodes;
}

// WKB suppression exponent of the ground-state tail: integral of sqrt(f)
// over the classically forbidden stretch ending at x_max.
real wkb_tail_exponent(const Grid& g, real E) {
    real s = 0;
    real prev = -1;
    for (std::size_t j = static_cast<std::size_t>(g.n); j-- > 0;) {
        const real f = g.w[j] - 2.0L * E;
        if (f <= 0) break;
        const real root = sqrtl(f);
        if (prev >= 0) s += 0.5L * g.h * (root + prev);
        prev = root;
    }
    return s;
}

std::string format_real(real v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Le", v);
    return std::string(buf);
}

// Ground eigenvalue of the discrete problem on one grid, by pure node
// bisection: expand upward from E = 0 (a rigorous lower bound, since the
// reduced operator is nonnegative for every D >= 1 -- the D = 2 attractive
// centrifugal term sits exactly at the Hardy bound) until the first node
// appears, then halve down to the long-double floor.
real solve_grid(const Grid& g, const Reduced& r, real step0) {
    real lo = 0.0L;
    if (count_nodes(g, r, lo) != 0)
        throw DomainError("ground_energy",
                          "node-count bracketing failed: a node below E = 0 "
                          "signals a corrupted discretization");
    real hi = step0;
    int guard = 0;
    while (count_nodes(g, r, hi) < 1) {
        hi *= 2.0L;
        if (++guard > 60)
            throw DomainError("ground_energy",
                              "node-count bracketing failed: no bound state below E = " +
                                  format_real(hi));
    }
    while (true) {
        const real mid = 0.5L * (lo + hi);
        if (!(mid > lo) || !(mid < hi)) break;
        if (count_nodes(g, r, mid) < 1)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5L * (lo + hi);
}

}  // namespace

RadialEnergy ground_energy(const RadialProblem& p, int target_digits) {
    if (p.dimension < 1)
        throw DomainError("ground_energy", "dimension must be at least 1");
    if (!std::isfinite(p.omega) || p.omega < 0)
        throw DomainError("ground_energy", "omega must be finite and non-negative");
    if (!std::isfinite(p.coupling) || p.coupling < 0)
        throw DomainError("ground_energy", "coupling must be finite and non-negative");
    if (p.omega == 0 && p.coupling == 0)
        throw DomainError("ground_energy", "omega and coupling must not both vanish");
    if (!std::isfinite(p.x_max) || p.x_max <= 1e-3)
        throw DomainError("ground_energy", "x_max must exceed the series anchor region");
    if (p.grid_points < 2000)
        throw DomainError("ground_energy", "grid_points must be at least 2000");
    if (target_digits < 1 || target_digits > 12)
        throw DomainError("ground_energy",
                          "target_digits must lie in 1..12: the long-double sweep "
                          "cannot certify more");

    Reduced r;
    r.dimension = p.dimension;
    r.omega2 = static_cast<real>(p.omega) * static_cast<real>(p.omega);
    r.two_g = 2.0L * static_cast<real>(p.coupling);
    r.centrifugal =
        0.25L * static_cast<real>(p.dimension - 1) * static_cast<real>(p.dimension - 3);
    r.x_max = static_cast<real>(p.x_max);

    real scale = std::max(static_cast<real>(p.omega), cbrtl(r.two_g));
    const real step0 = std::max(0.5L, 0.5L * static_cast<real>(p.dimension) * scale);

    const Grid coarse = build_grid(r, p.grid_points);
    const real e_coarse = solve_grid(coarse, r, step0);

    // Boundary-amplitude invariant: the WKB decay from the turning point to
    // x_max must beat the certification target before the fine pass is
    // worth running.
    const real needed =
        static_cast<real>(target_digits + 5) * logl(10.0L);
    const real got = wkb_tail_exponent(coarse, e_coarse);
    if (got < needed)
        throw DomainError("ground_energy",
                          "x_max too small: the WKB boundary suppression exponent " +
                              format_real(got) + " is below the required " +
                              format_real(needed));

    const Grid fine = build_grid(r, 2 * p.grid_points - 1);
    const real e_fine = solve_grid(fine, r, step0);

    // Numerov eigenvalues carry a clean h^4 error head, so one Richardson
    // step cancels it and the gap prices what is left.
    const real gap = fabsl(e_fine - e_coarse) / 15.0L;
    const real value = e_fine + (e_fine - e_coarse) / 15.0L;
    const real floor = 1e-17L * (1.0L + fabsl(value));

    RadialEnergy out;
    out.value = BigReal::parse(format_real(value), 40);
    out.uncertainty = BigReal::parse(format_real(gap + floor), 40);
    return out;
}

}
