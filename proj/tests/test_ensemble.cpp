#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ewalk/ensemble.hpp"
#include "ewalk/fit.hpp"

using namespace ewalk;

namespace {

WalkConfig return_cfg() {
    WalkConfig cfg;
    cfg.cookies_per_site = 1;
    cfg.bias_p = 0.7;
    cfg.geometry = Geometry::InfiniteLine;
    cfg.stop = {StopKind::FirstReturnToStart, 0};
    cfg.t_max = 3000;
    cfg.master_seed = 21;
    return cfg;
}

}  // namespace

TEST_CASE("geometric time grid") {
    auto ts = geometric_times(100, 1.5);
    CHECK(ts.front() == 1);
    CHECK(ts.back() == 100);
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
    // Ratio-1.5 grid contains round(1.5^k) values.
    CHECK(std::find(ts.begin(), ts.end(), 58) != ts.end());  // round(1.5^10)
}

TEST_CASE("histogram merge: two disjoint halves equal the whole") {
    auto whole = EmpiricalHistogram::logarithmic(1.0, 1.25, 40);
    auto a = EmpiricalHistogram::logarithmic(1.0, 1.25, 40);
    auto b = EmpiricalHistogram::logarithmic(1.0, 1.25, 40);
    StreamRng rng(4);
    for (int i = 0; i < 10000; ++i) {
        const double v = 1.0 + 500.0 * rng.next_unit();
        whole.add(v);
        (i % 2 ? a : b).add(v);
    }
    a.merge(b);
    for (int i = 0; i < whole.bins(); ++i) CHECK(a.count(i) == whole.count(i));
    CHECK(a.total_weight() == whole.total_weight());
    CHECK(a.mean() == doctest::Approx(whole.mean()).epsilon(1e-12));
}

TEST_CASE("histogram merge rejects mismatched binnings") {
    auto a = EmpiricalHistogram::uniform(0.0, 1.0, 10);
    auto b = EmpiricalHistogram::uniform(0.0, 2.0, 10);
    CHECK_THROWS_AS(a.merge(b), BinningError);
}

TEST_CASE("serial and parallel ensemble drivers are bitwise identical") {
    WalkConfig cfg = return_cfg();
    auto proto = EmpiricalHistogram::logarithmic(1.0, 1.25, 40);
    StopTimeCollector serial(proto), parallel(proto);
    run_ensemble_serial(cfg, 20000, nullptr, serial);
    run_ensemble(cfg, 20000, 4, nullptr, parallel);
    CHECK(serial.moments().n == parallel.moments().n);
    CHECK(serial.moments().sum == parallel.moments().sum);    // bitwise
    CHECK(serial.moments().sum2 == parallel.moments().sum2);  // bitwise
    CHECK(serial.truncated() == parallel.truncated());
    for (int i = 0; i < serial.hist().bins(); ++i)
        CHECK(serial.hist().count(i) == parallel.hist().count(i));
}

TEST_CASE("thread count does not change results") {
    WalkConfig cfg = return_cfg();
    auto proto = EmpiricalHistogram::logarithmic(1.0, 1.25, 40);
    StopTimeCollector one(proto), eight(proto);
    run_ensemble(cfg, 10000, 1, nullptr, one);
    run_ensemble(cfg, 10000, 8, nullptr, eight);
    CHECK(one.moments().sum == eight.moments().sum);
    for (int i = 0; i < one.hist().bins(); ++i)
        CHECK(one.hist().count(i) == eight.hist().count(i));
}

TEST_CASE("simple-walk displacement histogram is Gaussian") {
    WalkConfig cfg;
    cfg.cookies_per_site = 1;
    cfg.bias_p = 0.5;  // excited hops unbiased: a simple random walk
    cfg.geometry = Geometry::InfiniteLine;
    cfg.stop = {StopKind::MaxTime, 0};
    cfg.t_max = 10000;
    cfg.master_seed = 31;
    std::vector<long> cps = {10000};
    std::map<long, EmpiricalHistogram> protos;
    protos.emplace(10000, EmpiricalHistogram::uniform(-400.0, 400.0, 40));
    CheckpointCollector col(cps, protos);
    const long n = 20000;
    run_ensemble(cfg, n, 0, &cps, col);

    const double sigma = std::sqrt(10000.0);
    const auto& h = col.displacement(10000);
    for (int i = 0; i < h.bins(); ++i) {
        // Expected bin probability from the normal approximation.
        const double a = h.edge(i), b = h.edge(i + 1);
        const double pa = 0.5 * std::erfc(-a / (sigma * std::sqrt(2.0)));
        const double pb = 0.5 * std::erfc(-b / (sigma * std::sqrt(2.0)));
        const double expect = (pb - pa) * n;
        const double se = std::sqrt(expect * (1.0 - (pb - pa)) + 1.0);
        CHECK(std::abs(h.count(i) - expect) < 4.0 * se + 2.0);
    }
    CHECK(col.x_at(0).mean() == doctest::Approx(0.0).epsilon(1.0));
}

TEST_CASE("return-time tail slope at p = 0.7") {
    WalkConfig cfg = return_cfg();
    cfg.t_max = 30000;
    auto proto = EmpiricalHistogram::logarithmic(1.0, 1.25, 60);
    StopTimeCollector col(proto);
    run_ensemble(cfg, 150000, 0, nullptr, col);
    auto [ccdf_fit, pdf_fit] = tail_exponent(col.hist(), 30.0, 10000.0);
    CHECK(ccdf_fit.exponent == doctest::Approx(1.3).epsilon(0.08));
    CHECK(pdf_fit.exponent == doctest::Approx(1.3).epsilon(0.08));
}

TEST_CASE("collapse: rescale then unrescale is the identity") {
    auto h = EmpiricalHistogram::uniform(-50.0, 50.0, 50);
    StreamRng rng(8);
    for (int i = 0; i < 50000; ++i)
        h.add(20.0 * (rng.next_unit() + rng.next_unit() +
                      rng.next_unit() - 1.5));
    const double sigma = 7.3;
    Curve c = collapse_curve(h, sigma);
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        const double x_orig = c.x[i] * sigma;
        const double y_orig = c.y[i] / sigma;
        const int bin = h.bin_index(x_orig);
        CHECK(y_orig == doctest::Approx(h.density(bin)).epsilon(1e-12));
    }
}

TEST_CASE("collapse overlap of a curve with itself is zero") {
    Curve c;
    for (int i = 0; i < 50; ++i) {
        c.x.push_back(0.1 * i);
        c.y.push_back(std::exp(-0.05 * i));
    }
    CHECK(overlap_metric(c, c, 1e-6) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("1-excited p = 0.7 displacement curves collapse at two times") {
    WalkConfig cfg;
    cfg.cookies_per_site = 1;
    cfg.bias_p = 0.7;
    cfg.geometry = Geometry::InfiniteLine;
    cfg.stop = {StopKind::MaxTime, 0};
    cfg.master_seed = 77;
    const long t1 = 1834, t2 = 4096;
    cfg.t_max = t2;
    std::vector<long> cps = {t1, t2};
    std::map<long, EmpiricalHistogram> protos;
    protos.emplace(t1, EmpiricalHistogram::uniform(-300.5, 300.5, 120));
    protos.emplace(t2, EmpiricalHistogram::uniform(-300.5, 300.5, 120));
    CheckpointCollector col(cps, protos);
    run_ensemble(cfg, 60000, 0, &cps, col);

    const double s1 = std::sqrt(col.displacement(t1).variance());
    const double s2 = std::sqrt(col.displacement(t2).variance());
    Curve c1 = smooth_curve(collapse_curve(col.displacement(t1), s1), 0.0025);
    Curve c2 = smooth_curve(collapse_curve(col.displacement(t2), s2), 0.0025);
    CHECK(overlap_metric(c1, c2, 1e-3) < 0.08);
}
