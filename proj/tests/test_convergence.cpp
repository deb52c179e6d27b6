#include <doctest.h>

#include <utility>
#include <vector>

#include "test_util.hpp"
#include "vptd/convergence.hpp"
#include "vptd/error.hpp"

using namespace vptd;
using vptd::testutil::close;
using vptd::testutil::tol;

namespace {

std::vector<std::pair<int, BigReal>> synthetic_two_sided(long digits, const BigReal& vinf_odd,
                                                         const BigReal& vinf_even, int n_max) {
    // Exact two-sided model data: odd orders approach from below with rate
    // 1.1, even orders from above with rate 1.3.
    std::vector<std::pair<int, BigReal>> data;
    const BigReal a_odd = BigReal::of(-2L, digits);
    const BigReal a_even = to_bigreal(rational_of(3, 2), digits);
    const BigReal c_odd = BigReal::parse("1.1", digits);
    const BigReal c_even = BigReal::parse("1.3", digits);
    for (int n = 1; n <= n_max; ++n) {
        const BigReal x = cbrt(BigReal::of(static_cast<long>(n), digits));
        const BigReal v = (n % 2 != 0) ? vinf_odd + a_odd * exp(-c_odd * x)
                                       : vinf_even + a_even * exp(-c_even * x);
        data.emplace_back(n, v);
    }
    return data;
}

B0Sequence synthetic_sequence(long digits, const BigReal& reference, const BigReal& intercept,
                              const BigReal& slope, int n_max, bool alternating_perturbation) {
    B0Sequence seq;
    seq.dimension = 2;
    seq.digits = digits;
    seq.max_order = n_max;
    for (int n = 1; n <= n_max; ++n) {
        SequenceOrder entry;
        entry.order = n;
        entry.ok = true;
        BigReal dev = exp(intercept - slope * cbrt(BigReal::of(static_cast<long>(n), digits)));
        if (alternating_perturbation) {
            const BigReal factor = (n % 2 != 0) ? BigReal::parse("1.05", digits)
                                                : BigReal::parse("0.95", digits);
            dev = dev * factor;
        }
        entry.result.order = n;
        entry.result.b0 = reference * (BigReal::of(1L, digits) + dev);
        seq.orders.push_back(std::move(entry));
    }
    return seq;
}

}  // namespace

TEST_SUITE("convergence") {

TEST_CASE("extrapolation recovers an exact two-sided model") {
    const long digits = 120;
    const BigReal vinf = BigReal::parse("3.7", digits);
    const auto data = synthetic_two_sided(digits, vinf, vinf, 60);
    const ExtrapolationResult res = odd_even_extrapolate(data, digits);
    REQUIRE(res.ok);
    CHECK(res.odd.ok);
    CHECK(res.even.ok);
    CHECK(close(res.value, vinf, tol("1e-30", digits)));
    CHECK(res.uncertainty < tol("1e-30", digits));
    CHECK(close(res.odd.rate, BigReal::parse("1.1", digits), tol("1e-20", digits)));
    CHECK(close(res.even.rate, BigReal::parse("1.3", digits), tol("1e-20", digits)));
}

TEST_CASE("parity gap becomes the quoted uncertainty") {
    const long digits = 120;
    const BigReal half_gap = tol("1e-8", digits);
    const BigReal center = BigReal::parse("3.7", digits);
    const auto data = synthetic_two_sided(digits, center + half_gap, center - half_gap, 60);
    const ExtrapolationResult res = odd_even_extrapolate(data, digits);
    REQUIRE(res.ok);
    CHECK(close(res.value, center, tol("1e-25", digits)));
    CHECK(res.uncertainty > half_gap * BigReal::parse("0.8", digits));
    CHECK(res.uncertainty < half_gap * BigReal::parse("1.2", digits));
}

TEST_CASE("constant sequences extrapolate to themselves with zero spread") {
    const long digits = 64;
    std::vector<std::pair<int, BigReal>> data;
    const BigReal v = BigReal::parse("2.5", digits);
    for (int n = 1; n <= 20; ++n) data.emplace_back(n, v);
    const ExtrapolationResult res = odd_even_extrapolate(data, digits);
    REQUIRE(res.ok);
    CHECK(close(res.value, v, tol("1e-60")));
    CHECK(res.uncertainty.sign() == 0);
}

TEST_CASE("short tails are refused") {
    const long digits = 64;
    const BigReal vinf = BigReal::parse("3.7", digits);
    const auto data = synthetic_two_sided(digits, vinf, vinf, 5);
    const ExtrapolationResult res = odd_even_extrapolate(data, digits);
    CHECK(!res.ok);
    CHECK(!res.odd.ok);
}

TEST_CASE("tail selection respects the earliest-order floor") {
    const long digits = 120;
    const BigReal vinf = BigReal::parse("3.7", digits);
    const auto data = synthetic_two_sided(digits, vinf, vinf, 60);
    const ExtrapolationResult res = odd_even_extrapolate(data, digits, 40);
    REQUIRE(res.ok);
    CHECK(res.odd.first_order >= 40);
    CHECK(res.even.first_order >= 40);
}

TEST_CASE("law fit inverts exact synthetic data") {
    const long digits = 80;
    const BigReal ref = BigReal::of(2L, digits);
    const BigReal a = BigReal::of(6L, digits);
    const BigReal b = BigReal::of(10L, digits);
    const B0Sequence seq = synthetic_sequence(digits, ref, a, b, 70, false);
    const ConvergenceFit fit = fit_convergence_law(seq, ref, 5, 70);
    CHECK(fit.points == 66);
    CHECK(close(fit.intercept, a, tol("1e-25", digits)));
    CHECK(close(fit.slope, b, tol("1e-25", digits)));
    CHECK(fit.intercept_error < tol("1e-25", digits));
    CHECK(fit.slope_error < tol("1e-25", digits));
}

TEST_CASE("law fit reports meaningful standard errors under perturbation") {
    const long digits = 80;
    const BigReal ref = BigReal::of(2L, digits);
    const B0Sequence seq =
        synthetic_sequence(digits, ref, BigReal::of(6L, digits), BigReal::of(10L, digits), 70, true);
    const ConvergenceFit fit = fit_convergence_law(seq, ref, 5, 70);
    CHECK(abs(fit.intercept - BigReal::of(6L, digits)) < BigReal::parse("0.2", digits));
    CHECK(abs(fit.slope - BigReal::of(10L, digits)) < BigReal::parse("0.2", digits));
    CHECK(fit.slope_error.sign() > 0);
    CHECK(fit.slope_error < BigReal::parse("0.2", digits));
    CHECK(fit.intercept_error.sign() > 0);
}

TEST_CASE("ladder to order 30 approaches the two-dimensional limit") {
    const B0Sequence seq = b0_sequence(2, 30);
    CHECK(seq.digits == 145);  // precision policy for order 30
    for (const SequenceOrder& entry : seq.orders) {
        REQUIRE(entry.ok);
        CHECK(entry.result.defining_residual < tol("1e-80", seq.digits));
        CHECK(entry.result.has_uncertainty);
        CHECK(entry.result.uncertainty < tol("1e-20"));
    }
    const BigReal reference = BigReal::parse("1.477149753577994356", seq.digits);
    const BigReal dev4 = abs(seq.at(4).b0 - reference);
    const BigReal dev30 = abs(seq.at(30).b0 - reference);
    CHECK(dev30 < dev4);
    CHECK(dev30 < tol("1e-9"));

    // Per-parity deviations ride an exponentially falling envelope but are
    // not order-by-order monotone: an accidental near-cancellation (the
    // deviation crossing zero) is followed by a rebound to the envelope.
    // The robust statement is a lag-3 bound against the same parity.
    for (int n = 16; n <= 30; ++n) {
        const BigReal dev_n = abs(seq.at(n).b0 - reference);
        BigReal envelope = abs(seq.at(n - 2).b0 - reference);
        envelope = max(envelope, abs(seq.at(n - 4).b0 - reference));
        envelope = max(envelope, abs(seq.at(n - 6).b0 - reference));
        CHECK(dev_n < envelope);
    }

    // The short window keeps this test fast; it only brackets the law
    // loosely (the early orders still fluctuate around the asymptote).
    const ConvergenceFit fit = fit_convergence_law(seq, reference, 5, 30);
    CHECK(fit.slope > BigReal::of(7L, seq.digits));
    CHECK(fit.slope < BigReal::of(16L, seq.digits));
    CHECK(fit.intercept > BigReal::of(2L, seq.digits));
    CHECK(fit.intercept < BigReal::of(20L, seq.digits));
}

TEST_CASE("fit guards against unusable windows") {
    const long digits = 64;
    const BigReal ref = BigReal::of(2L, digits);
    const B0Sequence seq =
        synthetic_sequence(digits, ref, BigReal::of(6L, digits), BigReal::of(10L, digits), 10, false);
    CHECK_THROWS_AS(fit_convergence_law(seq, ref, 5, 4), const DomainError&);
    CHECK_THROWS_AS(fit_convergence_law(seq, BigReal::of(0L, digits), 5, 10), const DomainError&);
}

}
