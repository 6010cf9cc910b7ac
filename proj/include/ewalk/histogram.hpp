#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ewalk {

struct BinningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mergeable binned distribution.  Counts are exact integers; the
// moment sums are doubles and are bitwise reproducible as long as
// partial histograms are merged in a canonical order (the ensemble
// driver merges per-block partials in block order).
class EmpiricalHistogram {
  public:
    enum class Scale { Uniform, Log };

    EmpiricalHistogram() = default;

    static EmpiricalHistogram uniform(double lo, double hi, int bins) {
        if (!(lo < hi) || bins < 1) throw BinningError("bad uniform binning");
        EmpiricalHistogram h;
        h.scale_ = Scale::Uniform;
        h.lo_ = lo;
        h.hi_ = hi;
        h.counts_.assign(bins, 0);
        return h;
    }

    // Geometric bins [lo * r^i, lo * r^{i+1}), i = 0..bins-1.
    static EmpiricalHistogram logarithmic(double lo, double ratio, int bins) {
        if (!(lo > 0.0) || !(ratio > 1.0) || bins < 1)
            throw BinningError("bad log binning");
        EmpiricalHistogram h;
        h.scale_ = Scale::Log;
        h.lo_ = lo;
        h.ratio_ = ratio;
        h.hi_ = lo * std::pow(ratio, bins);
        h.counts_.assign(bins, 0);
        return h;
    }

    int bins() const { return static_cast<int>(counts_.size()); }
    Scale scale() const { return scale_; }

    // Bin index for a value, or -1 (underflow) / bins (overflow).
    int bin_index(double x) const {
        if (x < lo_) return -1;
        if (x >= hi_) return bins();
        if (scale_ == Scale::Uniform) {
            int i = static_cast<int>((x - lo_) / (hi_ - lo_) * bins());
            return i >= bins() ? bins() - 1 : i;
        }
        int i = static_cast<int>(std::log(x / lo_) / std::log(ratio_));
        // guard against edge round-off
        while (i > 0 && x < edge(i)) --i;
        while (i + 1 < bins() && x >= edge(i + 1)) ++i;
        return i;
    }

    double edge(int i) const {
        if (scale_ == Scale::Uniform)
            return lo_ + (hi_ - lo_) * static_cast<double>(i) / bins();
        return lo_ * std::pow(ratio_, i);
    }
    double width(int i) const { return edge(i + 1) - edge(i); }
    double center(int i) const {
        if (scale_ == Scale::Uniform) return 0.5 * (edge(i) + edge(i + 1));
        return std::sqrt(edge(i) * edge(i + 1));  // geometric midpoint
    }

    void add(double x) {
        int i = bin_index(x);
        if (i < 0)
            ++underflow_;
        else if (i >= bins())
            ++overflow_;
        else
            ++counts_[i];
        sum_ += x;
        sum2_ += x * x;
        ++total_;
    }

    bool same_binning(const EmpiricalHistogram& o) const {
        return scale_ == o.scale_ && lo_ == o.lo_ && hi_ == o.hi_ &&
               ratio_ == o.ratio_ && counts_.size() == o.counts_.size();
    }

    void merge(const EmpiricalHistogram& o) {
        if (!same_binning(o)) throw BinningError("histogram binning mismatch");
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
        underflow_ += o.underflow_;
        overflow_ += o.overflow_;
        sum_ += o.sum_;
        sum2_ += o.sum2_;
        total_ += o.total_;
    }

    std::int64_t count(int i) const { return counts_[i]; }
    std::int64_t underflow() const { return underflow_; }
    std::int64_t overflow() const { return overflow_; }
    std::int64_t total_weight() const { return total_; }
    std::int64_t in_range() const { return total_ - underflow_ - overflow_; }

    double mean() const { return total_ ? sum_ / static_cast<double>(total_) : 0.0; }
    double variance() const {
        if (total_ < 2) return 0.0;
        const double m = mean();
        const double v = sum2_ / static_cast<double>(total_) - m * m;
        return v > 0.0 ? v : 0.0;
    }
    double stddev() const { return std::sqrt(variance()); }

    // Normalized density estimate at bin i: count / (N * width).
    double density(int i) const {
        if (total_ == 0) return 0.0;
        return static_cast<double>(counts_[i]) /
               (static_cast<double>(total_) * width(i));
    }

  private:
    Scale scale_ = Scale::Uniform;
    double lo_ = 0.0, hi_ = 1.0, ratio_ = 0.0;
    std::vector<std::int64_t> counts_;
    std::int64_t underflow_ = 0, overflow_ = 0, total_ = 0;
    double sum_ = 0.0, sum2_ = 0.0;
};

// Streaming mean/variance accumulator with exact merge semantics
// (plain sums, merged in canonical order).
struct MomentAccumulator {
    std::int64_t n = 0;
    double sum = 0.0;
    double sum2 = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sum2 += x * x;
    }
    void merge(const MomentAccumulator& o) {
        n += o.n;
        sum += o.sum;
        sum2 += o.sum2;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double v = sum2 / static_cast<double>(n) - m * m;
        return v > 0.0 ? v : 0.0;
    }
    double stderr_mean() const {
        return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

}  // namespace ewalk
