#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ewalk::analytic {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SeriesControl {
    double rel_tol = 1e-12;
    long max_terms = 1000000;
};

// --- small numerics -------------------------------------------------------

// Riemann zeta via Euler-Maclaurin, good to ~1e-14 for s >= 2.
double riemann_zeta(double s);

// H_n = sum_{j=1}^n 1/j (0 for n <= 0).
double harmonic_number(long n);

// Adaptive Simpson quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);
// Quadrature on [0, inf) via the substitution x = u / (1 - u).
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double abs_tol);

// --- first-passage preliminaries on an interval [0, k] --------------------

// Eventual exit probabilities to the left / right edge from x0.
std::pair<double, double> exit_probabilities(double k, double x0);

// Mean exit times conditioned on leaving left / right.
std::pair<double, double> conditional_exit_times(double k, double x0);

// Laplace first-passage kernels, both edges absorbing (D = 1/2).
std::pair<double, double> fp_kernels_absorbing(double k, double x0, double s);

// Mean time to exit at the right edge with a reflecting origin.
double exit_time_reflecting(double k, double x0);

// Laplace first-passage kernel to the right edge, reflecting origin.
double fp_kernel_reflecting(double k, double x0, double s);

// --- last-cookie statistics on the half-line ------------------------------

// Mean first-hit time of the last cookie at distance n: 2 q n^2 + n.
double mean_hit_time_last_cookie(double n, double q);

// C(l) coefficient of the hit-time cumulants; exact rationals for small l.
double cumulant_coefficient(long l);
// kappa_l = q x^{2l} C(l).
double cumulant(long l, double q, double x);

// Scaling function Phi(mu) at p = 1/2 (image-series form).
double phi_half(double mu, const SeriesControl& ctl = {});
// Scaling function for general bias (binomial-series form).
double phi_general(double mu, double q, const SeriesControl& ctl = {});
// Leading large-mu term of phi_general.
double phi_general_leading(double mu, double q);

// N(q): mean last-cookie position is <x(t)> = 2 sqrt(t) N(q).
double norm_N(double q);

// --- return statistics ----------------------------------------------------

// prod_{k=2}^{x} (1 - 2q/k): probability of reaching x from 1 without
// touching the origin.
double no_return_probability(long x, double q);

// First-passage tail exponents (left, right) = (1 + q, 1 + p).
std::pair<double, double> return_exponents(double p);

// Partial return sum F_m(0).
double partial_return_sum(long m, double q);

// --- meal statistics ------------------------------------------------------

// P(r): probability of eating exactly r consecutive cookies from one
// side of a gap of length L.
double meal_pdf(long r, double L, double q);
// Scaled form 2q (1 + r~)^{-2q-1}.
double meal_pdf_scaled(double r_scaled, double q);
// Mean of r~ = r/L: 1/(2q-1) for q > 1/2, infinity otherwise.
double mean_meal_scaled(double q);

// Scaled joint density of (r~, s~) for one right-left cycle.
double joint_meal_pdf_scaled(double r_scaled, double s_scaled, double q);
// <r/s>: closed form away from q = 1/2, 3/4; quadrature of the
// defining double integral near those removable singularities.
double mean_ratio_r_over_s(double q);
double mean_ratio_r_over_s_quadrature(double q, double abs_tol = 1e-9);

// Typical right/left meal-length ratio (2^{1/2q} - 1) / (2^{1/2p} - 1).
double rstar_lstar_ratio(double p);

// --- k-excited transition -------------------------------------------------

// p_c = (1 + 1/k) / 2.
double critical_bias(long k);

// Residual cookie density 2 - 1/(p - q) for the 2-excited walk, p > 3/4.
double residual_density(double p);

// One-cookie domain length law p^len * q.
double one_cookie_domain_pdf(long len, double p);

// Lower bound on the transit time of a 2-excited walk across [0, L]
// seeded by a defect of length k: closed form and the recursion that
// defines it (cutoff at L).
double transit_time_lower_bound(long k_defect, long L);
double transit_time_recursion(long k_defect, long L);

}  // namespace ewalk::analytic
