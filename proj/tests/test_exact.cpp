#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ewalk/exact.hpp"

using namespace ewalk;

namespace {

// log of binomial probability P(S_t = x) for a simple +-1 walk.
double binomial_log_prob(long t, long x) {
    if ((t + x) % 2 != 0 || std::labs(x) > t) return -1e300;
    const long k = (t + x) / 2;
    return std::lgamma(t + 1.0) - std::lgamma(k + 1.0) -
           std::lgamma(t - k + 1.0) - t * std::log(2.0);
}

WalkConfig oracle_cfg(double p, Geometry g) {
    WalkConfig cfg;
    cfg.cookies_per_site = 1;
    cfg.bias_p = p;
    cfg.geometry = g;
    cfg.start_site = (g == Geometry::HalfLineAbsorbing) ? 1 : 0;
    cfg.stop = (g == Geometry::HalfLineAbsorbing)
                   ? StopRule{StopKind::FirstPassageToOrigin, 0}
                   : StopRule{StopKind::MaxTime, 0};
    cfg.t_max = 1000;
    return cfg;
}

}  // namespace

TEST_CASE("oracle: p = 1/2 walker law is binomial on the infinite line") {
    WalkConfig cfg = oracle_cfg(0.5, Geometry::InfiniteLine);
    OracleTable tab = enumerate_exact(cfg, 12);
    for (long t : {4L, 9L, 12L}) {
        CHECK(tab.live_mass(t) == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& [x, w] : tab.walker[t])
            CHECK(std::log(w) ==
                  doctest::Approx(binomial_log_prob(t, x)).epsilon(1e-10));
    }
}

TEST_CASE("oracle: absorbing first passage at t = 1 is q") {
    WalkConfig cfg = oracle_cfg(0.7, Geometry::HalfLineAbsorbing);
    OracleTable tab = enumerate_exact(cfg, 6);
    CHECK(tab.first_passage[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(tab.survival[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("oracle: probabilities conserve mass") {
    for (double p : {0.0, 0.3, 1.0}) {
        WalkConfig cfg = oracle_cfg(p, Geometry::HalfLineAbsorbing);
        OracleTable tab = enumerate_exact(cfg, 10);
        for (long t = 0; t <= 10; ++t)
            CHECK(tab.live_mass(t) + 1.0 - tab.survival[t] ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("oracle: horizon guard") {
    WalkConfig cfg = oracle_cfg(0.5, Geometry::InfiniteLine);
    CHECK_THROWS_AS(enumerate_exact(cfg, 21), ConfigError);
    CHECK_THROWS_AS(enumerate_exact(cfg, -1), ConfigError);
}

TEST_CASE("absorbing wedge: survival matches the oracle exactly") {
    for (double p : {0.25, 0.7, 0.9}) {
        WedgePropagator w(p, WedgePropagator::Boundary::Absorbing);
        WalkConfig cfg = oracle_cfg(p, Geometry::HalfLineAbsorbing);
        OracleTable tab = enumerate_exact(cfg, 16);
        for (long t = 1; t <= 16; ++t) {
            w.advance_to(t);
            CHECK(w.survival() ==
                  doctest::Approx(tab.survival[t]).epsilon(1e-12));
            CHECK(std::abs(w.conservation_defect()) < 1e-13);
        }
    }
}

TEST_CASE("absorbing wedge: S(1) = p") {
    for (double p : {0.1, 0.5, 0.8}) {
        WedgePropagator w(p, WedgePropagator::Boundary::Absorbing);
        w.advance_to(1);
        CHECK(w.survival() == doctest::Approx(p).epsilon(1e-15));
    }
}

TEST_CASE("reflecting wedge: joint law matches the oracle at small t") {
    const double p = 0.7;
    WedgePropagator w(p, WedgePropagator::Boundary::Reflecting);
    WalkConfig cfg = oracle_cfg(p, Geometry::HalfLineReflecting);
    OracleTable tab = enumerate_exact(cfg, 12);
    for (long t = 1; t <= 12; ++t) {
        w.advance_to(t);
        CHECK(w.live_mass() == doctest::Approx(1.0).epsilon(1e-12));
        // Compare the walker marginal.
        auto wm = w.walker_marginal();
        for (const auto& [x, prob] : tab.walker[t])
            CHECK(wm[x] == doctest::Approx(prob).epsilon(1e-12));
        // Compare the first-uneaten-cookie law.  Wedge convention:
        // non-excited states (x, y) with x < y carry y_right = y;
        // the excited diagonal (y, y) carries y_right = y + 1.
        std::vector<double> oracle_cm(2 * t + 4, 0.0);
        for (const auto& [key, prob] : tab.joint[t])
            oracle_cm[std::get<2>(key)] += prob;
        for (long yr = 1; yr <= w.y_hi() + 1; ++yr) {
            double conv = w.mass(yr - 1, yr - 1);  // excited diagonal
            for (long x = 0; x < yr; ++x) conv += w.mass(x, yr);
            CHECK(conv == doctest::Approx(oracle_cm[yr]).epsilon(1e-12));
        }
    }
}

TEST_CASE("wedge propagation is deterministic") {
    WedgePropagator a(0.6, WedgePropagator::Boundary::Absorbing);
    WedgePropagator b(0.6, WedgePropagator::Boundary::Absorbing);
    a.advance_to(64);
    b.advance_to(64);
    CHECK(a.survival() == b.survival());  // bitwise
    CHECK(a.live_mass() == b.live_mass());
}

TEST_CASE("wedge truncation: leaked mass is audited") {
    WedgePropagator exact(0.5, WedgePropagator::Boundary::Reflecting);
    WedgePropagator truncated(0.5, WedgePropagator::Boundary::Reflecting,
                              20000, /*y_trunc=*/40);
    exact.advance_to(300);
    truncated.advance_to(300);
    CHECK(truncated.leaked() > 0.0);
    CHECK(std::abs(truncated.conservation_defect()) < 1e-12);
    // Below the cap the distribution is exact: y never decreases, so
    // leaked walks can never re-enter rows y < y_trunc.
    auto cm_e = exact.cookie_marginal();
    auto cm_t = truncated.cookie_marginal();
    for (long y = 1; y < 40; ++y)
        CHECK(cm_t[y] == doctest::Approx(cm_e[y]).epsilon(1e-14));
}

TEST_CASE("wedge grow tolerance leaks only sub-threshold mass") {
    WedgePropagator exact(0.7, WedgePropagator::Boundary::Absorbing);
    WedgePropagator lossy(0.7, WedgePropagator::Boundary::Absorbing, 20000, -1,
                          0.0, /*grow_tol=*/1e-12);
    exact.advance_to(400);
    lossy.advance_to(400);
    CHECK(lossy.leaked() < 1e-8);
    CHECK(lossy.survival() == doctest::Approx(exact.survival()).epsilon(1e-9));
    CHECK(lossy.y_hi() < exact.y_hi());
}

TEST_CASE("wedge memory cap raises ResourceError with progress") {
    WedgePropagator w(0.7, WedgePropagator::Boundary::Absorbing, /*y_mem_cap=*/8);
    try {
        w.advance_to(1000);
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        CHECK(e.achieved_t > 0);
        CHECK(e.achieved_t < 1000);
    }
}

TEST_CASE("scaling samples from a marginal") {
    std::vector<double> cm = {0.0, 0.25, 0.5, 0.25};
    auto phi = scaling_from_marginal(cm, 4);
    REQUIRE(phi.size() == 3);
    CHECK(phi[0].mu == doctest::Approx(0.5));
    CHECK(phi[1].mu == doctest::Approx(1.0));
    CHECK(phi[1].phi == doctest::Approx(0.5));  // (y/2) P = 1 * 0.5
    // sum over samples of (2/mu) Phi dmu recovers total mass 1.
    double mass = 0.0;
    for (const auto& s : phi) mass += 2.0 / s.mu * s.phi * (1.0 / 2.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle: k = 2 residual cookies trend at strong bias") {
    // At p = 0.9 the 2-excited walk is transient to the right; the
    // mean number of eaten cookies at sites behind it stays below 2,
    // consistent with a positive residual density.
    WalkConfig cfg;
    cfg.cookies_per_site = 2;
    cfg.bias_p = 0.9;
    cfg.geometry = Geometry::InfiniteLine;
    cfg.t_max = 1000;
    OracleTable tab = enumerate_exact(cfg, 16);
    const double eaten_origin = tab.mean_eaten[16].at(0);
    CHECK(eaten_origin > 1.0);
    CHECK(eaten_origin < 2.0);
}
