#pragma once

#include <string>
#include <vector>

#include "ewalk/histogram.hpp"

namespace ewalk {

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PowerLawFit {
    double exponent = 0.0;  // pdf ~ t^{-exponent}
    double stderr_exponent = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double r2 = 0.0;  // goodness on the fitted (transformed) axes
    std::string method;
    int points = 0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    int points = 0;
};

// Ordinary least squares y = a + b x.
LinearFit least_squares(const std::vector<double>& xs,
                        const std::vector<double>& ys);

// Least squares of log y against log x.
LinearFit loglog_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

// Tail exponent alpha of pdf ~ t^{-alpha} from a log-binned histogram
// of positive samples, fitted on [window_lo, window_hi].  Method A
// fits the empirical CCDF (slope 1 - alpha); method B fits the
// log-binned density (slope -alpha).  Both are returned.
std::pair<PowerLawFit, PowerLawFit> tail_exponent(const EmpiricalHistogram& h,
                                                  double window_lo,
                                                  double window_hi);

// A curve sampled at increasing abscissae.
struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

// Scaled density curve (x/sigma, sigma * P(x)) from a uniform
// histogram.  Empty bins are skipped.
Curve collapse_curve(const EmpiricalHistogram& h, double sigma);

// Sliding geometric-window smoothing: each point is replaced by the
// average of points within half-width frac*|x| of it (the half-percent
// averaging convention uses frac = 0.0025).
Curve smooth_curve(const Curve& c, double frac);

// Relative L1 distance between two curves over the region where both
// exceed `floor`: integral of |a-b| divided by the integral of the
// mean, using linear interpolation of b onto a's grid.
double overlap_metric(const Curve& a, const Curve& b, double floor);

}  // namespace ewalk
