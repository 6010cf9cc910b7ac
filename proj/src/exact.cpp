#include "ewalk/exact.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>

namespace ewalk {

WedgePropagator::WedgePropagator(double p, Boundary boundary, long y_mem_cap,
                                 long y_trunc, double row_prune, double grow_tol)
    : p_(p),
      q_(1.0 - p),
      boundary_(boundary),
      y_mem_cap_(y_mem_cap),
      y_trunc_(y_trunc),
      row_prune_(row_prune),
      grow_tol_(grow_tol) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("bias p must lie in [0, 1]");
    ensure_row(cur_, 1);
    ensure_row(nxt_, 1);
    if (boundary_ == Boundary::Absorbing) {
        // Walk at x = 1 on the cookie at 1, already eaten: excited state.
        cur_[1][1] = 1.0;
        t_ = 0;
    } else {
        // First move from x = 0: hop to 1 (and eat) with p, stay with q.
        cur_[1][1] = p_;
        cur_[1][0] = q_;
        t_ = 1;
    }
}

void WedgePropagator::ensure_row(std::vector<std::vector<double>>& buf, long y) {
    if (static_cast<long>(buf.size()) <= y) buf.resize(y + 1);
    if (static_cast<long>(buf[y].size()) < y + 1) buf[y].assign(y + 1, 0.0);
}

void WedgePropagator::step() {
    // The excited state (y_hi, y_hi) feeds row y_hi + 1; grow or leak.
    long new_hi = y_hi_;
    const double top_excited = cur_[y_hi_][y_hi_];
    if (top_excited > 0.0) {
        if (top_excited <= grow_tol_) {
            leaked_ += top_excited;
            cur_[y_hi_][y_hi_] = 0.0;
        } else if (y_trunc_ >= 0 && y_hi_ >= y_trunc_) {
            leaked_ += top_excited;
            cur_[y_hi_][y_hi_] = 0.0;
        } else if (y_hi_ + 1 > y_mem_cap_) {
            throw ResourceError("wedge row cap exceeded", t_);
        } else {
            new_hi = y_hi_ + 1;
        }
    }
    for (long y = y_lo_; y <= new_hi; ++y) ensure_row(nxt_, y);

    const bool absorbing = (boundary_ == Boundary::Absorbing);
    std::vector<double> flux(new_hi + 1, 0.0);

#pragma omp parallel for schedule(static)
    for (long y = y_lo_; y <= new_hi; ++y) {
        const std::vector<double>& row = (y <= y_hi_) ? cur_[y] : nxt_[y];
        const bool live_row = (y <= y_hi_);
        std::vector<double>& out = nxt_[y];
        const double excited_below =
            (y - 1 >= y_lo_ && y - 1 <= y_hi_) ? cur_[y - 1][y - 1] : 0.0;
        const long x0 = absorbing ? 1 : 0;
        for (long x = x0; x <= y; ++x) {
            double v = 0.0;
            if (x >= 1) {
                if (live_row) v += 0.5 * row[x - 1];
            } else {
                if (live_row) v += 0.5 * row[0];  // reflecting stay
            }
            if (x + 1 <= y - 1 && live_row) v += 0.5 * row[x + 1];
            if (x == y) v += p_ * excited_below;
            // The excited left hop lands at y-2.  With an absorbing
            // origin that flux is absorbed (handled below); with a
            // reflecting origin x = 0 is a legal landing site.
            if (x == y - 2 && (x >= 1 || !absorbing)) v += q_ * excited_below;
            out[x] = v;
        }
        if (absorbing) {
            // Mass entering x = 0: the left hop from x = 1 (y >= 2) and
            // the excited left hop from (1,1) into (0,2).
            if (y >= 2 && live_row) flux[y] = 0.5 * row[1];
            if (y == 2) flux[y] += q_ * excited_below;
        }
    }
    if (absorbing)
        absorbed_ += std::accumulate(flux.begin(), flux.end(), 0.0);

    for (long y = y_lo_; y <= y_hi_; ++y)
        std::fill(cur_[y].begin(), cur_[y].end(), 0.0);
    std::swap(cur_, nxt_);
    y_hi_ = new_hi;
    ++t_;

    if (row_prune_ > 0.0) {
        while (y_lo_ < y_hi_) {
            double s = std::accumulate(cur_[y_lo_].begin(), cur_[y_lo_].end(), 0.0);
            if (s >= row_prune_) break;
            leaked_ += s;
            std::fill(cur_[y_lo_].begin(), cur_[y_lo_].end(), 0.0);
            ++y_lo_;
        }
    }
}

void WedgePropagator::advance_to(long t) {
    while (t_ < t) step();
}

double WedgePropagator::mass(long x, long y) const {
    if (y < y_lo_ || y > y_hi_ || x < 0 || x > y) return 0.0;
    return cur_[y][x];
}

double WedgePropagator::live_mass() const {
    double s = 0.0;
    for (long y = y_lo_; y <= y_hi_; ++y)
        s += std::accumulate(cur_[y].begin(), cur_[y].end(), 0.0);
    return s;
}

double WedgePropagator::conservation_defect() const {
    return live_mass() + absorbed_ + leaked_ - 1.0;
}

std::vector<double> WedgePropagator::walker_marginal() const {
    std::vector<double> m(y_hi_ + 1, 0.0);
    for (long y = y_lo_; y <= y_hi_; ++y)
        for (long x = 0; x <= y; ++x) m[x] += cur_[y][x];
    return m;
}

std::vector<double> WedgePropagator::cookie_marginal() const {
    std::vector<double> m(y_hi_ + 1, 0.0);
    for (long y = y_lo_; y <= y_hi_; ++y)
        m[y] = std::accumulate(cur_[y].begin(), cur_[y].end(), 0.0);
    return m;
}

std::vector<PhiSample> scaling_from_marginal(const std::vector<double>& cookie_marginal,
                                             long t) {
    std::vector<PhiSample> out;
    const double rt = std::sqrt(static_cast<double>(t));
    out.reserve(cookie_marginal.size());
    for (std::size_t y = 1; y < cookie_marginal.size(); ++y)
        out.push_back({static_cast<double>(y) / rt,
                       0.5 * static_cast<double>(y) * cookie_marginal[y]});
    return out;
}

double OracleTable::live_mass(long t) const {
    double s = 0.0;
    for (const auto& [x, w] : walker[t]) s += w;
    return s;
}

namespace {

constexpr long kNoLeft = LONG_MIN;

struct Enumerator {
    const WalkConfig& cfg;
    long horizon;
    OracleTable tab;

    void record_live(const WalkState& st, double w) {
        const long t = st.t;
        const long yl = st.has_y_left ? st.y_left : kNoLeft;
        tab.joint[t][{st.x, yl, st.y_right}] += w;
        tab.walker[t][st.x] += w;
        auto& eaten = tab.mean_eaten[t];
        const int k = st.field.cookies_per_site();
        for (long s = st.field.span_left(); s <= st.field.span_right(); ++s) {
            const int d = k - st.field.count(s);
            if (d > 0) eaten[s] += w * d;
        }
    }

    void visit(const WalkState& st, double w) {
        record_live(st, w);
        if (st.t >= horizon) return;
        const double thr = st.excited ? cfg.bias_p : 0.5;
        if (thr > 0.0) {
            WalkState next = st;
            step(next, 0.0, cfg);
            dispatch(next, w * thr);
        }
        if (thr < 1.0) {
            WalkState next = st;
            step(next, std::nextafter(1.0, 0.0), cfg);
            dispatch(next, w * (1.0 - thr));
        }
    }

    void dispatch(const WalkState& st, double w) {
        if (stop_reason(st, cfg)) {
            tab.first_passage[st.t] += w;
        } else {
            visit(st, w);
        }
    }
};

}  // namespace

OracleTable enumerate_exact(const WalkConfig& cfg, long horizon) {
    if (horizon > 20) throw ConfigError("enumeration horizon capped at 20");
    if (horizon < 0) throw ConfigError("enumeration horizon must be >= 0");
    validate(cfg);
    Enumerator en{cfg, horizon, {}};
    en.tab.horizon = horizon;
    en.tab.joint.resize(horizon + 1);
    en.tab.walker.resize(horizon + 1);
    en.tab.mean_eaten.resize(horizon + 1);
    en.tab.first_passage.assign(horizon + 1, 0.0);

    WalkState st = init_state(cfg);
    en.dispatch(st, 1.0);

    en.tab.survival.assign(horizon + 1, 1.0);
    double cum = 0.0;
    for (long t = 0; t <= horizon; ++t) {
        cum += en.tab.first_passage[t];
        en.tab.survival[t] = 1.0 - cum;
    }
    return std::move(en.tab);
}

}  // namespace ewalk
