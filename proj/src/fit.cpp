#include "ewalk/fit.hpp"

#include <algorithm>
#include <cmath>

namespace ewalk {

LinearFit least_squares(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw FitError("least squares needs >= 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw FitError("degenerate abscissae");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.points = static_cast<int>(n);
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        ss_res += r * r;
    }
    f.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    if (n > 2) f.stderr_slope = std::sqrt(ss_res / (n - 2) / sxx);
    return f;
}

LinearFit loglog_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    return least_squares(lx, ly);
}

std::pair<PowerLawFit, PowerLawFit> tail_exponent(const EmpiricalHistogram& h,
                                                  double window_lo,
                                                  double window_hi) {
    if (h.scale() != EmpiricalHistogram::Scale::Log)
        throw FitError("tail_exponent expects a log-binned histogram");
    // Cumulative counts from the right (includes overflow).
    std::vector<double> ccdf(h.bins() + 1, 0.0);
    ccdf[h.bins()] = static_cast<double>(h.overflow());
    for (int i = h.bins() - 1; i >= 0; --i)
        ccdf[i] = ccdf[i + 1] + static_cast<double>(h.count(i));
    const double n = static_cast<double>(h.total_weight());

    std::vector<double> xa, ya, xb, yb;
    for (int i = 0; i < h.bins(); ++i) {
        const double c = h.center(i);
        if (c < window_lo || c > window_hi) continue;
        if (ccdf[i] > 0.0) {
            xa.push_back(h.edge(i));
            ya.push_back(ccdf[i] / n);
        }
        if (h.count(i) > 0) {
            xb.push_back(c);
            yb.push_back(h.density(i));
        }
    }
    if (xa.size() < 10 || xb.size() < 10)
        throw FitError("tail window holds fewer than 10 log bins");

    LinearFit fa = loglog_fit(xa, ya);
    LinearFit fb = loglog_fit(xb, yb);
    PowerLawFit A{1.0 - fa.slope, fa.stderr_slope, window_lo, window_hi,
                  fa.r2, "ccdf", fa.points};
    PowerLawFit B{-fb.slope, fb.stderr_slope, window_lo, window_hi,
                  fb.r2, "log-binned-pdf", fb.points};
    return {A, B};
}

Curve collapse_curve(const EmpiricalHistogram& h, double sigma) {
    if (!(sigma > 0.0)) throw FitError("collapse needs sigma > 0");
    Curve c;
    for (int i = 0; i < h.bins(); ++i) {
        if (h.count(i) == 0) continue;
        c.x.push_back(h.center(i) / sigma);
        c.y.push_back(sigma * h.density(i));
    }
    return c;
}

Curve smooth_curve(const Curve& c, double frac) {
    Curve out;
    const std::size_t n = c.x.size();
    out.x = c.x;
    out.y.resize(n);
    std::size_t lo = 0, hi = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double half = frac * std::abs(c.x[i]);
        while (hi < n && c.x[hi] <= c.x[i] + half) {
            acc += c.y[hi];
            ++hi;
        }
        while (lo < hi && c.x[lo] < c.x[i] - half) {
            acc -= c.y[lo];
            ++lo;
        }
        out.y[i] = acc / static_cast<double>(hi - lo);
    }
    return out;
}

namespace {

double interp(const Curve& c, double x) {
    auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
    if (it == c.x.begin())
        return (!c.x.empty() && c.x.front() == x) ? c.y.front() : 0.0;
    if (it == c.x.end()) return 0.0;
    const std::size_t j = static_cast<std::size_t>(it - c.x.begin());
    const double x0 = c.x[j - 1], x1 = c.x[j];
    const double w = (x - x0) / (x1 - x0);
    return (1.0 - w) * c.y[j - 1] + w * c.y[j];
}

}  // namespace

double overlap_metric(const Curve& a, const Curve& b, double floor) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i < a.x.size(); ++i) {
        const double dx = a.x[i] - a.x[i - 1];
        const double ya = 0.5 * (a.y[i] + a.y[i - 1]);
        const double yb = 0.5 * (interp(b, a.x[i]) + interp(b, a.x[i - 1]));
        if (ya < floor || yb < floor) continue;
        num += std::abs(ya - yb) * dx;
        den += 0.5 * (ya + yb) * dx;
    }
    if (den == 0.0) throw FitError("curves do not overlap above the floor");
    return num / den;
}

}  // namespace ewalk
