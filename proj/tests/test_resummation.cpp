#include <doctest.h>

#include <array>
#include <initializer_list>
#include <optional>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vptd/error.hpp"
#include "vptd/resummation.hpp"

using namespace vptd;
using vptd::testutil::close;
using vptd::testutil::tol;

namespace {

VariationalEnergyInput make_input(int order, Rational dim, const char* g, const char* om,
                                  const char* Om, long digits) {
    VariationalEnergyInput in;
    in.order = order;
    in.dimension = std::move(dim);
    in.coupling = to_bigreal(parse_rational(g), digits);
    in.frequency = to_bigreal(parse_rational(om), digits);
    in.omega = to_bigreal(parse_rational(Om), digits);
    in.digits = digits;
    return in;
}

}  // namespace

TEST_SUITE("resummation") {

TEST_CASE("energy matches two independent summation routes") {
    // Rational inputs make the energy an exact rational; the reference string
    // was produced by the gamma-function route and cross-checked against the
    // divided-difference route before being frozen here.
    const long digits = 80;
    const VariationalEnergyInput in = make_input(3, 1, "1/10", "1", "6/5", digits);
    const BigReal e = variational_energy(in);
    const BigReal frozen =
        BigReal::parse("0.55935417771829989711934156378600823045267489711934", digits);
    CHECK(close(e, frozen, tol("1e-49", digits)));

    const BigReal via_gamma =
        testoracle::energy_gamma_route(3, 1, in.coupling, in.frequency, in.omega, digits);
    CHECK(close(e, via_gamma, tol("1e-70", digits)));

    const BigReal via_divdiff =
        testoracle::energy_divided_difference_route(3, 1, in.coupling, in.frequency, in.omega, 60);
    CHECK(close(e, via_divdiff, tol("1e-55", digits)));
}

TEST_CASE("energy is covariant under the cubic rescaling") {
    // E(lambda^3 g, lambda omega, lambda Omega) = lambda E(g, omega, Omega).
    const long digits = 64;
    const VariationalEnergyInput base = make_input(7, rational_of(5, 2), "3/10", "11/10", "9/10", digits);
    const BigReal lambda = BigReal::parse("1.37", digits);
    VariationalEnergyInput scaled = base;
    scaled.coupling = base.coupling * pow_si(lambda, 3);
    scaled.frequency = base.frequency * lambda;
    scaled.omega = base.omega * lambda;
    CHECK(close(variational_energy(scaled), lambda * variational_energy(base), tol("1e-58")));
}

TEST_CASE("analytic frequency derivatives match central differences") {
    const long digits = 120;
    const VariationalEnergyInput in = make_input(6, 3, "1/2", "1", "13/10", digits);
    const BigReal h = tol("1e-20", digits);
    VariationalEnergyInput up = in, dn = in;
    up.omega = in.omega + h;
    dn.omega = in.omega - h;
    const BigReal e_up = variational_energy(up);
    const BigReal e_dn = variational_energy(dn);
    const BigReal e_mid = variational_energy(in);

    // Central differences carry an h^2 truncation error scaled by the next
    // derivative, so the comparison is relative to the derivative size.
    const BigReal fd_first = (e_up - e_dn) / (BigReal::of(2L, digits) * h);
    const BigReal d1 = variational_energy_domega(in);
    CHECK(close(d1, fd_first, tol("1e-34", digits) * abs(d1)));

    const BigReal fd_second = (e_up - BigReal::of(2L, digits) * e_mid + e_dn) / (h * h);
    const BigReal d2 = variational_energy_d2omega(in);
    CHECK(close(d2, fd_second, tol("1e-33", digits) * abs(d2)));
}

TEST_CASE("zero-frequency energy reduces to the strong-coupling coefficient") {
    // At omega = 0 and Omega = Omega0 g^(1/3) the resummed energy collapses
    // to g^(1/3) b0(Omega0); the partial binomial sums telescope exactly.
    const long digits = 80;
    const Rational dim = 3;
    const BigReal g = to_bigreal(rational_of(23, 10), digits);
    const BigReal omega0 = to_bigreal(rational_of(17, 10), digits);
    VariationalEnergyInput in;
    in.order = 9;
    in.dimension = dim;
    in.coupling = g;
    in.frequency = BigReal::of(0L, digits);
    in.omega = omega0 * cbrt(g);
    in.digits = digits;
    const BigReal lhs = variational_energy(in);
    const BigReal rhs = cbrt(g) * reduced_b0(9, dim, omega0, digits);
    CHECK(close(lhs, rhs, tol("1e-70", digits) * abs(rhs)));
}

TEST_CASE("first-order optimum has its closed form") {
    for (long d : {1L, 2L, 3L, 10L}) {
        const Rational dim = d;
        ResummationContext ctx(1, dim, 64);
        const StrongCouplingResult res = ctx.optimize(1, std::nullopt);
        const BigReal omega0_exact = cbrt(to_bigreal(2 * (dim + 2), 64));
        CHECK(res.kind == StationaryKind::extremum);
        CHECK(close(res.omega0, omega0_exact, tol("1e-55") * omega0_exact));
        const BigReal b0_exact = to_bigreal(rational_of(3 * d, 8), 64) * omega0_exact;
        CHECK(close(res.b0, b0_exact, tol("1e-55") * b0_exact));
        CHECK(res.curvature.sign() > 0);  // the first-order optimum is a minimum
        CHECK(res.defining_residual < tol("1e-45"));

        const FirstOrderStrongCoupling fo =
            first_order_strong_coupling(dim, BigReal::of(1L, 64), 64);
        CHECK(close(fo.omega0, omega0_exact, tol("1e-60") * omega0_exact));
        CHECK(close(fo.b0, b0_exact, tol("1e-60") * b0_exact));
    }
}

TEST_CASE("first-order frequency corrections are asymptotically exact") {
    // With Omega(g) = g^(1/3)(Omega0 + Omega1 g^(-2/3)) the order-1 energy
    // must match g^(1/3)(b0 + b1 g^(-2/3) + b2 g^(-4/3)) up to O(g^(-5/3)),
    // i.e. the residual after dividing by g^(1/3) falls off as g^-2. The
    // quadratic penalty of any error in Omega1 would surface at the b2 order,
    // so the ratio test exercises Omega1, b1 and b2 together.
    const long digits = 100;
    const Rational dim = 3;
    const BigReal one = BigReal::of(1L, digits);
    const FirstOrderStrongCoupling fo = first_order_strong_coupling(dim, one, digits);
    auto residual = [&](const char* g_text) {
        const BigReal g = BigReal::parse(g_text, digits);
        const BigReal g13 = cbrt(g);
        VariationalEnergyInput in;
        in.order = 1;
        in.dimension = dim;
        in.coupling = g;
        in.frequency = one;
        in.omega = g13 * (fo.omega0 + fo.omega1 / (g13 * g13));
        in.digits = digits;
        const BigReal model =
            fo.b0 + fo.b1 / (g13 * g13) + fo.b2 / pow_si(g13, 4);
        return abs(variational_energy(in) / g13 - model);
    };
    const BigReal r12 = residual("1e12");
    const BigReal r15 = residual("1e15");
    // r ~ C g^-2 means the ratio across three decades is 1e6.
    const BigReal ratio = r12 / r15;
    CHECK(ratio > BigReal::parse("3e5", digits));
    CHECK(ratio < BigReal::parse("3e6", digits));
}

TEST_CASE("second-order stationarity structure depends on the dimension") {
    const long digits = 64;
    auto count_kind = [](const StrongCouplingResult& res, StationaryKind k) {
        std::size_t n = 0;
        for (const auto& c : res.candidates)
            if (c.kind == k) ++n;
        return n;
    };
    // At dimension 10 the derivative of b0 has two real zeros, but the
    // flatter of the two extrema is the outer one, so the inflection at
    // Omega^3 = (5/4)(2D^2+9D+10)/(D+2) = 125/4 lies deeper inside and is
    // the accepted optimum; both extrema stay on the audit list.
    // The closed second-order form b0(Omega) = 3 D Omega/16 + D(D+2)/(2 Omega^2)
    //                                          - D(2D^2+9D+10)/(8 Omega^5)
    // lets us verify the reported optimum independently.
    {
        const Rational dim = 10;
        ResummationContext ctx(2, dim, digits);
        const BigReal anchor = cbrt(to_bigreal(2 * (dim + 2), digits));
        const StrongCouplingResult res = ctx.optimize(2, anchor);
        CHECK(res.kind == StationaryKind::turning_point);
        CHECK(count_kind(res, StationaryKind::extremum) == 2);
        CHECK(count_kind(res, StationaryKind::turning_point) == 1);
        const BigReal u_exact = to_bigreal(rational_of(125, 4), digits);
        CHECK(close(pow_si(res.omega0, 3), u_exact, tol("1e-55") * u_exact));
        auto b0_closed = [&](const BigReal& om) -> BigReal {
            return BigReal::of(30L, digits) / BigReal::of(16L, digits) * om +
                   BigReal::of(10L * 12 / 2, digits) / (om * om) -
                   BigReal::of(10L * 300 / 8, digits) / pow_si(om, 5);
        };
        CHECK(close(res.b0, b0_closed(res.omega0), tol("1e-58") * res.b0));
        // The second derivative of the closed form vanishes at the optimum
        // (the second difference carries a truncation error of order
        // f''''(Omega) h^2 / 12 ~ 1e-29).
        const BigReal h = tol("1e-15", digits);
        const BigReal fd2 = (b0_closed(res.omega0 + h) - BigReal::of(2L, digits) * b0_closed(res.omega0) +
                             b0_closed(res.omega0 - h)) /
                            (h * h);
        CHECK(abs(fd2) < tol("1e-27"));
        CHECK(abs(res.curvature) < tol("1e-45"));
        // The extrema bracket values close to, but distinct from, the chosen one.
        for (const auto& c : res.candidates) {
            if (c.kind == StationaryKind::extremum) {
                CHECK(abs(c.curvature) > tol("1e-10"));
                CHECK(abs(c.b0 - res.b0) < BigReal::parse("0.2", digits));
            }
        }
    }
    // At dimension 3 no extremum exists at order 2; the unique turning point
    // of b0 satisfies Omega^3 = (5/4)(2D^2+9D+10)/(D+2) = 55/4.
    {
        const Rational dim = 3;
        ResummationContext ctx(2, dim, digits);
        const StrongCouplingResult res = ctx.optimize(2, std::nullopt);
        CHECK(res.kind == StationaryKind::turning_point);
        CHECK(count_kind(res, StationaryKind::extremum) == 0);
        const BigReal u_exact = to_bigreal(rational_of(55, 4), digits);
        CHECK(close(pow_si(res.omega0, 3), u_exact, tol("1e-55") * u_exact));
    }
}

TEST_CASE("anchored ladder walks toward the strong-coupling limit") {
    const long digits = 64;
    ResummationContext ctx(6, 2, digits);
    std::optional<BigReal> anchor;
    BigReal last_b0 = BigReal::of(0L, digits);
    // Observed optimized shapes for dimension 2: at orders 1-4 the inner
    // winner alternates extremum/inflection, while orders 5 and 6 flip
    // (an inner inflection overtakes the lone extremum at 5, a flat inner
    // extremum overtakes the inflection at 6).  Frozen as a regression.
    const std::array<StationaryKind, 6> expected_kinds = {
        StationaryKind::extremum,      StationaryKind::turning_point,
        StationaryKind::extremum,      StationaryKind::turning_point,
        StationaryKind::turning_point, StationaryKind::extremum};
    for (int order = 1; order <= 6; ++order) {
        const StrongCouplingResult res = ctx.optimize(order, anchor);
        CHECK(res.defining_residual < tol("1e-45"));
        CHECK(res.kind == expected_kinds[static_cast<std::size_t>(order - 1)]);
        // Re-derive the selection from the audit list: the accepted point is
        // the inner of {flattest extremum, innermost inflection}.
        std::optional<BigReal> ext_omega, ext_curv, turn_omega;
        for (const StationaryCandidate& cand : res.candidates) {
            if (cand.kind == StationaryKind::extremum) {
                if (!ext_curv || abs(cand.curvature) < *ext_curv) {
                    ext_curv = abs(cand.curvature);
                    ext_omega = cand.omega0;
                }
            } else if (!turn_omega || cand.omega0 < *turn_omega) {
                turn_omega = cand.omega0;
            }
        }
        BigReal expected = ext_omega ? *ext_omega : *turn_omega;
        if (ext_omega && turn_omega && *turn_omega < *ext_omega) expected = *turn_omega;
        CHECK(close(res.omega0, expected, tol("1e-60")));
        anchor = res.omega0;
        last_b0 = res.b0;
    }
    // Reference leading coefficient for dimension 2 (accepted value
    // 1.477149753577994...); order 6 should sit within 1e-3 while order 1
    // (3/8 * 2 * 8^(1/3) = 3/2) is off by 2.3e-2.
    const BigReal reference = BigReal::parse("1.477149753577994356", digits);
    CHECK(abs(last_b0 - reference) < tol("1e-3"));
    CHECK(abs(last_b0 - reference) < abs(to_bigreal(rational_of(3, 2), digits) - reference));
}

TEST_CASE("uncertainty is assessed by an elevated-precision re-run") {
    const StrongCouplingResult res = optimize_omega0(8, 2, 64, std::nullopt, true);
    CHECK(res.has_uncertainty);
    CHECK(res.uncertainty < tol("1e-40"));
    CHECK(res.uncertainty.sign() >= 0);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(reduced_b0(3, 2, BigReal::of(-1L, 64), 64), const DomainError&);
    CHECK_THROWS_AS(variational_energy(make_input(3, 2, "1/10", "1", "0", 64)), const DomainError&);
    ResummationContext ctx(4, 2, 64);
    CHECK_THROWS_AS(ctx.optimize(0, std::nullopt), const DomainError&);
    CHECK_THROWS_AS(ctx.optimize(5, std::nullopt), const DomainError&);
}

}
