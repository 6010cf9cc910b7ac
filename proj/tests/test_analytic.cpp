#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ewalk/analytic.hpp"

using namespace ewalk::analytic;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("riemann zeta spot values") {
    CHECK(riemann_zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
    CHECK(riemann_zeta(4.0) ==
          doctest::Approx(kPi * kPi * kPi * kPi / 90.0).epsilon(1e-13));
    CHECK(riemann_zeta(6.0) == doctest::Approx(1.0173430619844491).epsilon(1e-13));
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic_number(0) == 0.0);
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("exit probabilities on an interval") {
    auto [l1, r1] = exit_probabilities(4, 2);
    CHECK(l1 == doctest::Approx(0.5));
    CHECK(r1 == doctest::Approx(0.5));

    auto [l2, r2] = exit_probabilities(7, 0);
    CHECK(l2 == doctest::Approx(1.0));
    CHECK(r2 == doctest::Approx(0.0));

    auto [l3, r3] = exit_probabilities(5, 1);
    CHECK(l3 == doctest::Approx(0.8));
    CHECK(r3 == doctest::Approx(0.2));
}

TEST_CASE("conditional exit times") {
    auto [tm, tp] = conditional_exit_times(4, 2);
    CHECK(tm == doctest::Approx(4.0));
    CHECK(tp == doctest::Approx(4.0));

    // x0 -> k: conditional time to the near edge vanishes.
    auto [tm2, tp2] = conditional_exit_times(6, 5.999);
    (void)tm2;
    CHECK(tp2 < 0.02);
}

TEST_CASE("laplace kernels reduce to exit probabilities at s = 0") {
    auto [l, r] = fp_kernels_absorbing(5, 1, 1e-12);
    CHECK(l == doctest::Approx(0.8).epsilon(1e-5));
    CHECK(r == doctest::Approx(0.2).epsilon(1e-5));

    // x0 = k/2: symmetric kernels.
    auto [ls, rs] = fp_kernels_absorbing(8, 4, 0.01);
    CHECK(ls == doctest::Approx(rs).epsilon(1e-12));
}

TEST_CASE("kernel derivative at s = 0 gives the unconditional exit time") {
    const double k = 6, x0 = 2;
    const double h = 1e-6;
    auto [l1, r1] = fp_kernels_absorbing(k, x0, h);
    auto [l0, r0] = fp_kernels_absorbing(k, x0, 1e-14);
    const double deriv = -((l1 + r1) - (l0 + r0)) / (h - 1e-14);
    CHECK(deriv == doctest::Approx(x0 * (k - x0)).epsilon(1e-3));
}

TEST_CASE("reflecting exit time") {
    // t(n, n-2) = 4n - 2.
    for (long n : {5L, 12L, 40L})
        CHECK(exit_time_reflecting(n, n - 2) == doctest::Approx(4.0 * n - 2.0));
    CHECK(exit_time_reflecting(3, 1) == doctest::Approx(10.0));
    CHECK(exit_time_reflecting(9, 9) == doctest::Approx(0.0));
}

TEST_CASE("reflecting kernel: s = 0 limit and derivative") {
    CHECK(fp_kernel_reflecting(7, 3, 1e-14) == doctest::Approx(1.0).epsilon(1e-6));
    // Continuum convention: -dR/ds at 0 is k^2 - x0^2 (the lattice
    // exit time k(k+1) - x0(x0+1) differs by an O(k) boundary shift).
    const double k = 7, x0 = 3, h = 1e-7;
    const double deriv = -(fp_kernel_reflecting(k, x0, h) - 1.0) / h;
    CHECK(deriv == doctest::Approx(k * k - x0 * x0).epsilon(1e-4));
}

TEST_CASE("reflecting kernel large-k expansion near the top") {
    // R ~ 1 - 2 sqrt(2s) tanh(sqrt(2s) k) at x0 = k - 2.
    const double k = 200, s = 1e-5;
    const double expansion = 1.0 - 2.0 * std::sqrt(2.0 * s) *
                                       std::tanh(std::sqrt(2.0 * s) * k);
    CHECK(fp_kernel_reflecting(k, k - 2, s) ==
          doctest::Approx(expansion).epsilon(1e-3));
}

TEST_CASE("mean hit time of the last cookie") {
    CHECK(mean_hit_time_last_cookie(10, 0.5) == doctest::Approx(110.0));
    CHECK(mean_hit_time_last_cookie(7, 0.0) == doctest::Approx(7.0));  // ballistic
}

TEST_CASE("cumulant coefficients") {
    CHECK(cumulant_coefficient(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cumulant_coefficient(2) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(cumulant_coefficient(3) == doctest::Approx(32.0 / 15.0).epsilon(1e-12));
    // kappa_1 = 2 q x^2.
    CHECK(cumulant(1, 0.3, 5.0) == doctest::Approx(2.0 * 0.3 * 25.0));
}

TEST_CASE("phi_half small-mu asymptote") {
    const double mu = 0.12;
    const double lead = (kPi / (2.0 * mu * mu)) *
                        std::exp(-kPi * kPi / (8.0 * mu * mu));
    CHECK(phi_half(mu) / lead == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("phi_half equals phi_general at q = 1/2") {
    for (double mu = 0.05; mu <= 5.0; mu += 0.193)
        CHECK(phi_half(mu) == doctest::Approx(phi_general(mu, 0.5)).epsilon(1e-10));
}

TEST_CASE("phi_general large-mu leading term") {
    const double q = 0.3, mu = 4.0;
    CHECK(phi_general(mu, q) ==
          doctest::Approx(phi_general_leading(mu, q)).epsilon(1e-3));
}

TEST_CASE("phi_general integrals: normalization and mean") {
    for (double q : {0.1, 0.5, 1.0}) {
        const double norm = integrate_semi_infinite(
            [&](double mu) { return mu > 0 ? 2.0 / mu * phi_general(mu, q) : 0.0; },
            1e-10);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-7));
        const double mean = integrate_semi_infinite(
            [&](double mu) { return mu > 0 ? phi_general(mu, q) : 0.0; }, 1e-10);
        CHECK(mean == doctest::Approx(norm_N(q)).epsilon(1e-8));
    }
}

TEST_CASE("norm N spot values and q -> 0 limit") {
    CHECK(norm_N(0.5) == doctest::Approx(std::sqrt(kPi / 8.0)).epsilon(1e-12));
    const double q = 1e-3;
    CHECK(2.0 * q * std::sqrt(2.0 * kPi) * norm_N(q) ==
          doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("no-return probability") {
    CHECK(no_return_probability(50, 0.0) == doctest::Approx(1.0));
    CHECK(no_return_probability(2, 0.3) == doctest::Approx(0.7));
    // ~ C x^{-2q}: the compensated product is constant over a decade.
    const double q = 0.3;
    const double c1 = no_return_probability(100, q) * std::pow(100.0, 2 * q);
    const double c2 = no_return_probability(1000, q) * std::pow(1000.0, 2 * q);
    CHECK(c1 == doctest::Approx(c2).epsilon(0.01));
}

TEST_CASE("first-passage tail exponents") {
    auto [a, b] = return_exponents(0.5);
    CHECK(a == doctest::Approx(1.5));
    CHECK(b == doctest::Approx(1.5));
    auto [a2, b2] = return_exponents(0.7);
    CHECK(a2 == doctest::Approx(1.3));
    CHECK(b2 == doctest::Approx(1.7));
}

TEST_CASE("partial return sum") {
    for (double q : {0.2, 0.5, 0.9})
        CHECK(partial_return_sum(1, q) == doctest::Approx(q).epsilon(1e-14));
    // 1 - F_m ~ m^{-2q}: log-slope between two decades.
    const double q = 0.3;
    const double d4 = 1.0 - partial_return_sum(10000, q);
    const double d6 = 1.0 - partial_return_sum(1000000, q);
    const double slope = std::log(d6 / d4) / std::log(100.0);
    CHECK(slope == doctest::Approx(-2.0 * q).epsilon(0.01));
    // Approach to 1 at large m.
    CHECK(d6 < 0.01);
    CHECK(d6 > 0.0);
}

TEST_CASE("meal pdf: normalization and scaled form") {
    const double q = 0.6, L = 100;
    double sum = 0.0;
    for (long r = 1; r <= 2000000; ++r) sum += meal_pdf(r, L, q);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
    // L P(r) approaches the scaled density at large L.
    const double Lbig = 10000;
    const double rt = 0.7;
    CHECK(Lbig * meal_pdf(std::lround(rt * Lbig), Lbig, q) ==
          doctest::Approx(meal_pdf_scaled(rt, q)).epsilon(1e-2));
}

TEST_CASE("mean scaled meal length") {
    CHECK(mean_meal_scaled(0.75) == doctest::Approx(2.0));
    CHECK(std::isinf(mean_meal_scaled(0.5)));
    CHECK(std::isinf(mean_meal_scaled(0.3)));
}

TEST_CASE("joint meal density is normalized") {
    const double q = 0.35;
    const double norm = integrate_semi_infinite(
        [&](double s) {
            if (s <= 0.0) return 0.0;
            return integrate(
                [&](double r) { return joint_meal_pdf_scaled(r, s, q); }, 0.0, s,
                1e-10);
        },
        1e-8);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-2));
    // Value at the origin is 4q(1-q).
    CHECK(joint_meal_pdf_scaled(0.0, 0.0, q) ==
          doctest::Approx(4.0 * q * (1.0 - q)).epsilon(1e-12));
}

TEST_CASE("mean ratio <r/s>") {
    // q = 1/4: cot(2 pi q) = 0 and 2q^2/(1-2q)^2 = 1/2, so the value is
    // exactly 1/2 (to double precision through the tan evaluation).
    CHECK(mean_ratio_r_over_s(0.25) == doctest::Approx(0.5).epsilon(1e-14));
    // Closed form and defining quadrature agree at a generic q.
    for (double q : {0.2, 0.35, 0.45})
        CHECK(mean_ratio_r_over_s(q) ==
              doctest::Approx(mean_ratio_r_over_s_quadrature(q)).epsilon(1e-6));
    // Removable singularities: continuity across q = 1/2 and q = 3/4.
    CHECK(mean_ratio_r_over_s(0.5) ==
          doctest::Approx(mean_ratio_r_over_s(0.501)).epsilon(2e-3));
    CHECK(mean_ratio_r_over_s(0.75) ==
          doctest::Approx(mean_ratio_r_over_s(0.749)).epsilon(2e-3));
}

TEST_CASE("typical meal ratio r*/l*") {
    CHECK(rstar_lstar_ratio(0.5) == doctest::Approx(1.0));
    CHECK(rstar_lstar_ratio(0.75) ==
          doctest::Approx(3.0 / (std::pow(2.0, 2.0 / 3.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("critical bias") {
    CHECK(critical_bias(2) == doctest::Approx(0.75));
    CHECK(critical_bias(1) == doctest::Approx(1.0));
    CHECK(critical_bias(1000000000) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("residual cookie density") {
    CHECK(residual_density(0.9) == doctest::Approx(0.75));
    CHECK(residual_density(0.7500001) == doctest::Approx(0.0).epsilon(1e-4));
}

TEST_CASE("one-cookie domain law") {
    const double p = 0.9;
    // log-slope of p^len q is ln p.
    const double slope = std::log(one_cookie_domain_pdf(20, p) /
                                  one_cookie_domain_pdf(10, p)) / 10.0;
    CHECK(slope == doctest::Approx(std::log(p)).epsilon(1e-12));
    CHECK(slope == doctest::Approx(-0.105).epsilon(0.01));
    // Normalization: sum over len >= 1 equals p.
    double sum = 0.0;
    for (long len = 1; len <= 400; ++len) sum += one_cookie_domain_pdf(len, p);
    CHECK(sum == doctest::Approx(p).epsilon(1e-10));
}

TEST_CASE("transit-time bound") {
    CHECK(transit_time_lower_bound(2, 100) == doctest::Approx(0.0));
    CHECK(transit_time_lower_bound(3, 10) ==
          doctest::Approx(3.0 + 4.0 * (harmonic_number(10) - harmonic_number(2)))
              .epsilon(1e-12));
    CHECK(transit_time_lower_bound(3, 10) ==
          doctest::Approx(8.715873015873015).epsilon(1e-12));
    for (long L : {5L, 37L, 200L})
        for (long k = 2; k <= L; ++k)
            CHECK(transit_time_recursion(k, L) ==
                  doctest::Approx(transit_time_lower_bound(k, L)).epsilon(1e-10));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(residual_density(0.6), DomainError);
    CHECK_THROWS_AS(critical_bias(0), DomainError);
    CHECK_THROWS_AS(norm_N(-0.1), DomainError);
    CHECK_THROWS_AS(transit_time_lower_bound(1, 10), DomainError);
    CHECK_THROWS_AS(transit_time_lower_bound(12, 10), DomainError);
}
