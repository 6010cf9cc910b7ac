#pragma once

#include <vector>

#include "ewalk/histogram.hpp"
#include "ewalk/walk.hpp"

namespace ewalk {

// Maximal runs of consecutive sites with cookie count exactly c within
// [lo, hi] (clamped to the visited span).
std::vector<long> domain_scan(const CookieField& field, int c, long lo, long hi);

struct CycleStats {
    long cycles = 0;
    double mean_ratio = 0.0;     // <r / (r + l)>
    double ci_halfwidth = 0.0;   // bootstrap ~1 sigma
    bool reliable = false;       // false when cycles < 100
};

// <r/(r+l)> with a bootstrap confidence half-width (std of B resampled
// means).  Deterministic given bootstrap_seed.
CycleStats cycle_statistics(const std::vector<CycleRecord>& records,
                            int bootstrap_rounds = 200,
                            std::uint64_t bootstrap_seed = 12345);

// Embedded-chain sampler for the meal-cycle experiment.  Equivalent in
// law to cycle_run (k=1, infinite line, initial gap L) but advances
// cookie-eating events directly: between eating events the walk is an
// unbiased walk in a cookie-free interval, and its exit side is a
// single Bernoulli draw with the gambler's-ruin probability.  O(1)
// work per cookie event instead of O(interval^2) steps.
std::vector<CycleRecord> fast_cycle_sample(double p, long initial_gap,
                                           long max_events,
                                           std::uint64_t master_seed,
                                           std::uint64_t realization_index);

// Median of a histogram by linear interpolation within the median bin.
double histogram_median(const EmpiricalHistogram& h);

// Per-site mean residual cookie count over an ensemble, on the scaled
// axis site / <x(t)>.
struct ProfileScan {
    std::vector<double> scaled_x;    // site / mean displacement
    std::vector<double> mean_count;  // in [0, k]
    double mean_displacement = 0.0;
    // Average of mean_count over scaled_x in [lo, hi].
    double plateau(double lo, double hi) const;
};

}  // namespace ewalk
