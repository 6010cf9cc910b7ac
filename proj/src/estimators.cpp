#include "ewalk/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "ewalk/rng.hpp"

namespace ewalk {

std::vector<long> domain_scan(const CookieField& field, int c, long lo, long hi) {
    lo = std::max(lo, field.span_left());
    hi = std::min(hi, field.span_right());
    std::vector<long> runs;
    long len = 0;
    for (long s = lo; s <= hi; ++s) {
        if (field.count(s) == c) {
            ++len;
        } else if (len > 0) {
            runs.push_back(len);
            len = 0;
        }
    }
    if (len > 0) runs.push_back(len);
    return runs;
}

CycleStats cycle_statistics(const std::vector<CycleRecord>& records,
                            int bootstrap_rounds, std::uint64_t bootstrap_seed) {
    CycleStats st;
    st.cycles = static_cast<long>(records.size());
    if (st.cycles == 0) return st;
    std::vector<double> ratios(records.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        ratios[i] = static_cast<double>(records[i].r) /
                    static_cast<double>(records[i].r + records[i].l);
        sum += ratios[i];
    }
    st.mean_ratio = sum / static_cast<double>(st.cycles);
    st.reliable = (st.cycles >= 100);

    StreamRng rng(bootstrap_seed);
    const std::size_t n = ratios.size();
    double bsum = 0.0, bsum2 = 0.0;
    for (int b = 0; b < bootstrap_rounds; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += ratios[rng.next_u64() % n];
        const double m = s / static_cast<double>(n);
        bsum += m;
        bsum2 += m * m;
    }
    const double bm = bsum / bootstrap_rounds;
    const double bv = bsum2 / bootstrap_rounds - bm * bm;
    st.ci_halfwidth = bv > 0.0 ? std::sqrt(bv) : 0.0;
    return st;
}

std::vector<CycleRecord> fast_cycle_sample(double p, long initial_gap,
                                           long max_events,
                                           std::uint64_t master_seed,
                                           std::uint64_t realization_index) {
    if (initial_gap < 1) throw ConfigError("fast_cycle_sample needs gap >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("bias p must lie in [0, 1]");
    const double q = 1.0 - p;
    StreamRng rng = StreamRng::for_realization(master_seed, realization_index);
    std::vector<CycleRecord> cycles;

    // Extreme cookie positions; walker starts at 0, gap [-L+1, 0].
    long cl = -initial_gap;
    long cr = 1;
    long r = 0, l = 0;
    bool in_cycle = false;

    // Side of the cookie just eaten: 0 = none (unexcited interior walk
    // from x), +1 = right at e, -1 = left at e.
    int side = 0;
    long x = 0;  // interior position, valid only when side == 0
    long e = 0;  // just-eaten site, valid when side != 0

    auto eat_right = [&]() {
        if (in_cycle && l > 0) {
            cycles.push_back({r, l});
            r = 0;
            l = 0;
        }
        in_cycle = true;
        ++r;
        e = cr;
        ++cr;
        side = +1;
    };
    auto eat_left = [&]() {
        if (in_cycle) ++l;  // pre-cycle left cookies are dropped
        e = cl;
        --cl;
        side = -1;
    };

    for (long ev = 0; ev < max_events; ++ev) {
        if (side == 0) {
            // Unbiased walk in (cl, cr): exit side is gambler's ruin.
            const double pr = static_cast<double>(x - cl) /
                              static_cast<double>(cr - cl);
            if (rng.next_unit() < pr)
                eat_right();
            else
                eat_left();
        } else if (side == +1) {
            if (rng.next_unit() < p) {
                eat_right();  // excited hop onto the next right cookie
            } else {
                x = e - 1;  // step into the gap, unexcited
                side = 0;
                --ev;  // no cookie eaten this round
            }
        } else {
            if (rng.next_unit() < q) {
                eat_left();
            } else {
                x = e + 1;
                side = 0;
                --ev;
            }
        }
    }
    return cycles;
}

double histogram_median(const EmpiricalHistogram& h) {
    const double half = 0.5 * static_cast<double>(h.in_range());
    double cum = 0.0;
    for (int i = 0; i < h.bins(); ++i) {
        const double c = static_cast<double>(h.count(i));
        if (cum + c >= half && c > 0.0) {
            const double frac = (half - cum) / c;
            return h.edge(i) + frac * h.width(i);
        }
        cum += c;
    }
    return h.edge(h.bins());
}

double ProfileScan::plateau(double lo, double hi) const {
    double sum = 0.0;
    long n = 0;
    for (std::size_t i = 0; i < scaled_x.size(); ++i) {
        if (scaled_x[i] >= lo && scaled_x[i] <= hi) {
            sum += mean_count[i];
            ++n;
        }
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace ewalk
