// Throughput benchmark: serial reference driver vs the OpenMP block
// driver on the same workload, verifying bitwise-identical results
// while reporting the speedup.

#include <chrono>
#include <cstdio>

#include "ewalk/ensemble.hpp"

using namespace ewalk;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    long realizations = 200000;
    long tmax = 2000;
    if (argc > 1) realizations = std::atol(argv[1]);
    if (argc > 2) tmax = std::atol(argv[2]);

    WalkConfig cfg;
    cfg.cookies_per_site = 1;
    cfg.bias_p = 0.7;
    cfg.geometry = Geometry::InfiniteLine;
    cfg.stop = {StopKind::FirstReturnToStart, 0};
    cfg.t_max = tmax;
    cfg.master_seed = 99;

    auto proto = EmpiricalHistogram::logarithmic(1.0, 1.25, 60);

    StopTimeCollector serial(proto);
    double t0 = now_s();
    run_ensemble_serial(cfg, realizations, nullptr, serial);
    const double t_serial = now_s() - t0;

    StopTimeCollector parallel(proto);
    t0 = now_s();
    run_ensemble(cfg, realizations, 0, nullptr, parallel);
    const double t_parallel = now_s() - t0;

    bool identical = serial.truncated() == parallel.truncated() &&
                     serial.moments().n == parallel.moments().n &&
                     serial.moments().sum == parallel.moments().sum &&
                     serial.moments().sum2 == parallel.moments().sum2;
    for (int i = 0; identical && i < serial.hist().bins(); ++i)
        identical = serial.hist().count(i) == parallel.hist().count(i);

    std::printf("realizations      %ld (tmax %ld)\n", realizations, tmax);
    std::printf("serial reference  %.3f s\n", t_serial);
    std::printf("openmp driver     %.3f s\n", t_parallel);
    std::printf("speedup           %.2fx\n", t_serial / t_parallel);
    std::printf("bitwise identical %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
