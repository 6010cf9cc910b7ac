#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ewalk/estimators.hpp"
#include "ewalk/histogram.hpp"
#include "ewalk/walk.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ewalk {

// Geometric checkpoint grid t = round(ratio^k), deduplicated, capped
// at t_max.  The conventional sampling grid for time series.
inline std::vector<long> geometric_times(long t_max, double ratio = 1.5) {
    std::vector<long> ts;
    for (double v = 1.0; ; v *= ratio) {
        const long t = std::lround(v);
        if (t > t_max) break;
        if (ts.empty() || ts.back() != t) ts.push_back(t);
    }
    if (!ts.empty() && ts.back() != t_max) ts.push_back(t_max);
    return ts;
}

// Block-parallel ensemble driver.
//
// Realizations are split into fixed blocks; each block is collected
// into a private partial and partials are merged strictly in block
// order (the OpenMP `ordered` clause).  Because every realization's
// random stream depends only on (master_seed, realization_index), and
// the merge order is canonical, results are bitwise identical for any
// thread count — including the serial driver below.
template <class Collector>
void run_ensemble(const WalkConfig& base, long realizations, int threads,
                  const std::vector<long>* checkpoints, Collector& out,
                  long block_size = 1024) {
    const long nblocks = (realizations + block_size - 1) / block_size;
#ifdef _OPENMP
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt) ordered
#endif
    for (long b = 0; b < nblocks; ++b) {
        Collector local = out.empty_like();
        const long i0 = b * block_size;
        const long i1 = std::min(realizations, i0 + block_size);
        for (long i = i0; i < i1; ++i) {
            WalkConfig cfg = base;
            cfg.realization_index =
                base.realization_index + static_cast<std::uint64_t>(i);
            local.collect(cfg, run(cfg, checkpoints));
        }
#ifdef _OPENMP
#pragma omp ordered
#endif
        out.merge(local);
    }
    (void)threads;
}

// Serial reference driver: same block structure and merge order, no
// OpenMP.  Must produce bitwise-identical results to run_ensemble.
template <class Collector>
void run_ensemble_serial(const WalkConfig& base, long realizations,
                         const std::vector<long>* checkpoints, Collector& out,
                         long block_size = 1024) {
    const long nblocks = (realizations + block_size - 1) / block_size;
    for (long b = 0; b < nblocks; ++b) {
        Collector local = out.empty_like();
        const long i0 = b * block_size;
        const long i1 = std::min(realizations, i0 + block_size);
        for (long i = i0; i < i1; ++i) {
            WalkConfig cfg = base;
            cfg.realization_index =
                base.realization_index + static_cast<std::uint64_t>(i);
            local.collect(cfg, run(cfg, checkpoints));
        }
        out.merge(local);
    }
}

// --- concrete collectors --------------------------------------------------

// Stop-time statistics (first return, first passage, hit times).
class StopTimeCollector {
  public:
    explicit StopTimeCollector(EmpiricalHistogram hist_proto)
        : hist_(std::move(hist_proto)) {}

    StopTimeCollector empty_like() const {
        return StopTimeCollector(proto_of(hist_));
    }

    void collect(const WalkConfig&, RunOutcome&& out) {
        if (out.terminal == Terminal::Truncated) {
            ++truncated_;
            return;
        }
        hist_.add(static_cast<double>(out.t));
        moments_.add(static_cast<double>(out.t));
    }

    void merge(const StopTimeCollector& o) {
        hist_.merge(o.hist_);
        moments_.merge(o.moments_);
        truncated_ += o.truncated_;
    }

    const EmpiricalHistogram& hist() const { return hist_; }
    const MomentAccumulator& moments() const { return moments_; }
    long truncated() const { return truncated_; }

  private:
    static EmpiricalHistogram proto_of(const EmpiricalHistogram& h) {
        if (h.scale() == EmpiricalHistogram::Scale::Uniform)
            return EmpiricalHistogram::uniform(h.edge(0), h.edge(h.bins()),
                                               h.bins());
        return EmpiricalHistogram::logarithmic(h.edge(0), h.edge(1) / h.edge(0),
                                               h.bins());
    }

    EmpiricalHistogram hist_;
    MomentAccumulator moments_;
    long truncated_ = 0;
};

// Time-series statistics at geometric checkpoints, with optional full
// displacement histograms at designated times.
class CheckpointCollector {
  public:
    CheckpointCollector(std::vector<long> times,
                        std::map<long, EmpiricalHistogram> displacement_protos = {})
        : times_(std::move(times)), disp_(std::move(displacement_protos)) {
        x_.resize(times_.size());
        y_.resize(times_.size());
    }

    CheckpointCollector empty_like() const {
        return CheckpointCollector(times_, disp_protos());
    }

    void collect(const WalkConfig&, RunOutcome&& out) {
        std::size_t j = 0;
        for (const TraceSample& s : out.trace) {
            while (j < times_.size() && times_[j] < s.t) ++j;
            if (j >= times_.size()) break;
            if (times_[j] != s.t) continue;
            x_[j].add(static_cast<double>(s.x));
            y_[j].add(static_cast<double>(s.y_right));
            auto it = disp_.find(s.t);
            if (it != disp_.end()) it->second.add(static_cast<double>(s.x));
            ++j;
        }
    }

    void merge(const CheckpointCollector& o) {
        for (std::size_t j = 0; j < times_.size(); ++j) {
            x_[j].merge(o.x_[j]);
            y_[j].merge(o.y_[j]);
        }
        for (auto& [t, h] : disp_) h.merge(o.disp_.at(t));
    }

    const std::vector<long>& times() const { return times_; }
    const MomentAccumulator& x_at(std::size_t j) const { return x_[j]; }
    const MomentAccumulator& y_at(std::size_t j) const { return y_[j]; }
    const EmpiricalHistogram& displacement(long t) const { return disp_.at(t); }

  private:
    std::map<long, EmpiricalHistogram> disp_protos() const {
        std::map<long, EmpiricalHistogram> m;
        for (const auto& [t, h] : disp_) {
            if (h.scale() == EmpiricalHistogram::Scale::Uniform)
                m.emplace(t, EmpiricalHistogram::uniform(h.edge(0),
                                                         h.edge(h.bins()),
                                                         h.bins()));
            else
                m.emplace(t, EmpiricalHistogram::logarithmic(
                                 h.edge(0), h.edge(1) / h.edge(0), h.bins()));
        }
        return m;
    }

    std::vector<long> times_;
    std::vector<MomentAccumulator> x_;   // walker position
    std::vector<MomentAccumulator> y_;   // rightmost-cookie position
    std::map<long, EmpiricalHistogram> disp_;
};

// Final-state cookie structure: per-site residual counts on [0,
// site_cap], final displacement, and domain-length histograms for
// one-cookie and zero-cookie runs behind the walker.
class ProfileCollector {
  public:
    ProfileCollector(long site_cap, int run_hist_bins = 200)
        : site_cap_(site_cap), run_bins_(run_hist_bins),
          one_runs_(EmpiricalHistogram::uniform(0.5, 0.5 + run_hist_bins,
                                                run_hist_bins)),
          zero_runs_(EmpiricalHistogram::uniform(0.5, 0.5 + run_hist_bins,
                                                 run_hist_bins)) {
        count_sum_.assign(site_cap_ + 1, 0.0);
    }

    ProfileCollector empty_like() const {
        return ProfileCollector(site_cap_, run_bins_);
    }

    void collect(const WalkConfig&, RunOutcome&& out) {
        const WalkState& st = out.final_state;
        for (long s = 0; s <= site_cap_; ++s)
            count_sum_[s] += static_cast<double>(st.field.count(s));
        x_final_.add(static_cast<double>(st.x));
        for (long len : domain_scan(st.field, 1, 0, st.x))
            one_runs_.add(static_cast<double>(len));
        for (long len : domain_scan(st.field, 0, 0, st.x))
            zero_runs_.add(static_cast<double>(len));
        ++realizations_;
    }

    void merge(const ProfileCollector& o) {
        for (long s = 0; s <= site_cap_; ++s) count_sum_[s] += o.count_sum_[s];
        x_final_.merge(o.x_final_);
        one_runs_.merge(o.one_runs_);
        zero_runs_.merge(o.zero_runs_);
        realizations_ += o.realizations_;
    }

    ProfileScan profile() const {
        ProfileScan ps;
        ps.mean_displacement = x_final_.mean();
        if (realizations_ == 0 || ps.mean_displacement <= 0.0) return ps;
        ps.scaled_x.reserve(count_sum_.size());
        ps.mean_count.reserve(count_sum_.size());
        for (long s = 0; s <= site_cap_; ++s) {
            ps.scaled_x.push_back(static_cast<double>(s) / ps.mean_displacement);
            ps.mean_count.push_back(count_sum_[s] /
                                    static_cast<double>(realizations_));
        }
        return ps;
    }

    const EmpiricalHistogram& one_cookie_runs() const { return one_runs_; }
    const EmpiricalHistogram& zero_cookie_runs() const { return zero_runs_; }
    const MomentAccumulator& final_displacement() const { return x_final_; }
    long realizations() const { return realizations_; }

  private:
    long site_cap_;
    int run_bins_;
    std::vector<double> count_sum_;
    MomentAccumulator x_final_;
    EmpiricalHistogram one_runs_, zero_runs_;
    long realizations_ = 0;
};

// Distributions of the extreme-cookie displacements at the final time.
class ExtremeCookieCollector {
  public:
    ExtremeCookieCollector(double hi, int bins)
        : hi_(hi), bins_(bins),
          right_(EmpiricalHistogram::uniform(0.0, hi, bins)),
          left_(EmpiricalHistogram::uniform(0.0, hi, bins)) {}

    ExtremeCookieCollector empty_like() const {
        return ExtremeCookieCollector(hi_, bins_);
    }

    void collect(const WalkConfig& cfg, RunOutcome&& out) {
        const WalkState& st = out.final_state;
        right_.add(static_cast<double>(st.y_right - cfg.start_site));
        if (st.has_y_left)
            left_.add(static_cast<double>(cfg.start_site - st.y_left));
    }

    void merge(const ExtremeCookieCollector& o) {
        right_.merge(o.right_);
        left_.merge(o.left_);
    }

    const EmpiricalHistogram& right() const { return right_; }
    const EmpiricalHistogram& left() const { return left_; }
    // Ratio of ensemble medians, the empirical r*/l* summary.
    double median_ratio() const {
        return histogram_median(right_) / histogram_median(left_);
    }

  private:
    double hi_;
    int bins_;
    EmpiricalHistogram right_, left_;
};

// Walker-position frequencies over a fixed integer window at the final
// time, plus terminal-state tallies; used for exact-law triangulation.
class PositionCountCollector {
  public:
    PositionCountCollector(long x_lo, long x_hi) : x_lo_(x_lo), x_hi_(x_hi) {
        counts_.assign(x_hi - x_lo + 1, 0);
    }

    PositionCountCollector empty_like() const {
        return PositionCountCollector(x_lo_, x_hi_);
    }

    void collect(const WalkConfig&, RunOutcome&& out) {
        ++total_;
        if (out.terminal != Terminal::Truncated) {
            ++stopped_;
            return;
        }
        const long x = out.final_state.x;
        if (x >= x_lo_ && x <= x_hi_) ++counts_[x - x_lo_];
    }

    void merge(const PositionCountCollector& o) {
        for (std::size_t i = 0; i < counts_.size(); ++i)
            counts_[i] += o.counts_[i];
        total_ += o.total_;
        stopped_ += o.stopped_;
    }

    long x_lo() const { return x_lo_; }
    long x_hi() const { return x_hi_; }
    std::int64_t count_at(long x) const { return counts_[x - x_lo_]; }
    std::int64_t total() const { return total_; }
    std::int64_t stopped() const { return stopped_; }

  private:
    long x_lo_, x_hi_;
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0, stopped_ = 0;
};

}  // namespace ewalk
