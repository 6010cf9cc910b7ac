#include "ewalk/analytic.hpp"

#include <cmath>

namespace ewalk::analytic {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double riemann_zeta(double s) {
    if (s <= 1.0) throw DomainError("zeta implemented for s > 1 only");
    // Euler-Maclaurin: direct sum to N plus tail corrections.
    const int N = 30;
    double sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::pow(n, -s);
    const double Ns = std::pow(N, -s);
    sum += Ns * N / (s - 1.0);
    sum += 0.5 * Ns;
    sum += s * Ns / N / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * Ns / std::pow(N, 3) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * Ns /
           std::pow(N, 5) / 30240.0;
    return sum;
}

double harmonic_number(long n) {
    double h = 0.0;
    for (long j = 1; j <= n; ++j) h += 1.0 / static_cast<double>(j);
    return h;
}

namespace {

double adapt_simpson(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adapt_simpson(f, a, b, fa, fm, fb, whole, abs_tol, 48);
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double abs_tol) {
    auto g = [&f](double u) {
        if (u >= 1.0) return 0.0;
        const double w = 1.0 - u;
        return f(u / w) / (w * w);
    };
    return integrate(g, 0.0, 1.0, abs_tol);
}

// --- interval first passage ----------------------------------------------

std::pair<double, double> exit_probabilities(double k, double x0) {
    if (k <= 0.0 || x0 < 0.0 || x0 > k)
        throw DomainError("exit probabilities need 0 <= x0 <= k, k > 0");
    return {1.0 - x0 / k, x0 / k};
}

std::pair<double, double> conditional_exit_times(double k, double x0) {
    if (!(x0 > 0.0 && x0 < k))
        throw DomainError("conditional exit times need 0 < x0 < k");
    return {x0 * (2.0 * k - x0) / 3.0, (k * k - x0 * x0) / 3.0};
}

namespace {

// sinh(a)/sinh(b) for a, b >= 0 without overflow.
double sinh_ratio(double a, double b) {
    if (b == 0.0) throw DomainError("sinh ratio with zero denominator");
    if (b < 30.0) return std::sinh(a) / std::sinh(b);
    return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) /
           (1.0 - std::exp(-2.0 * b));
}

double cosh_ratio(double a, double b) {
    if (b < 30.0) return std::cosh(a) / std::cosh(b);
    return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) /
           (1.0 + std::exp(-2.0 * b));
}

}  // namespace

std::pair<double, double> fp_kernels_absorbing(double k, double x0, double s) {
    if (k <= 0.0 || x0 < 0.0 || x0 > k || s < 0.0)
        throw DomainError("kernel needs 0 <= x0 <= k, s >= 0");
    if (s == 0.0) return exit_probabilities(k, x0);
    const double w = std::sqrt(2.0 * s);
    return {sinh_ratio(w * (k - x0), w * k), sinh_ratio(w * x0, w * k)};
}

double exit_time_reflecting(double k, double x0) {
    if (x0 < 0.0 || x0 > k) throw DomainError("need 0 <= x0 <= k");
    return k * (k + 1.0) - x0 * (x0 + 1.0);
}

double fp_kernel_reflecting(double k, double x0, double s) {
    if (k <= 0.0 || x0 < 0.0 || x0 > k || s < 0.0)
        throw DomainError("kernel needs 0 <= x0 <= k, s >= 0");
    if (s == 0.0) return 1.0;
    const double w = std::sqrt(2.0 * s);
    return cosh_ratio(w * x0, w * k);
}

// --- last-cookie statistics -----------------------------------------------

double mean_hit_time_last_cookie(double n, double q) {
    if (n < 0.0 || q < 0.0 || q > 1.0) throw DomainError("need n >= 0, q in [0,1]");
    return 2.0 * q * n * n + n;
}

double cumulant_coefficient(long l) {
    if (l < 1) throw DomainError("cumulant order must be >= 1");
    double fact = 1.0;
    for (long j = 2; j < l; ++j) fact *= static_cast<double>(j);
    return std::pow(8.0, static_cast<double>(l) + 1.0 / 3.0) *
           (1.0 - std::pow(2.0, -2.0 * static_cast<double>(l))) * fact *
           std::pow(kPi, -2.0 * static_cast<double>(l)) *
           riemann_zeta(2.0 * static_cast<double>(l));
}

double cumulant(long l, double q, double x) {
    return q * std::pow(x, 2.0 * static_cast<double>(l)) * cumulant_coefficient(l);
}

double phi_half(double mu, const SeriesControl& ctl) {
    if (mu <= 0.0) throw DomainError("phi needs mu > 0");
    const double a = kPi * kPi / (8.0 * mu * mu);
    double sum = 0.0;
    double sign = 1.0;
    for (long k = 0; k < ctl.max_terms; ++k) {
        const double m = 2.0 * static_cast<double>(k) + 1.0;
        const double term = sign * m * std::exp(-m * m * a);
        sum += term;
        if (k >= 2 && std::abs(term) <= ctl.rel_tol * std::abs(sum)) break;
        sign = -sign;
    }
    return kPi / (2.0 * mu * mu) * sum;
}

double phi_general_leading(double mu, double q) {
    return mu * q * std::pow(2.0, 2.0 * q + 0.5) / std::sqrt(kPi) *
           std::exp(-2.0 * mu * mu * q * q);
}

double phi_general(double mu, double q, const SeriesControl& ctl) {
    if (mu <= 0.0) throw DomainError("phi needs mu > 0");
    if (!(q > 0.0 && q <= 1.0)) throw DomainError("phi needs 0 < q <= 1");
    double binom = 1.0;  // binom(-2q, k)
    double sum = 0.0;
    long quiet = 0;
    for (long k = 0; k < ctl.max_terms; ++k) {
        const double kq = static_cast<double>(k) + q;
        const double term = binom * kq * std::exp(-2.0 * mu * mu * kq * kq);
        sum += term;
        if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
            if (++quiet >= 2 && k >= 4) break;
        } else {
            quiet = 0;
        }
        binom *= (-2.0 * q - static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
    }
    return mu * std::pow(2.0, 2.0 * q + 0.5) / std::sqrt(kPi) * sum;
}

double norm_N(double q) {
    if (!(q > 0.0 && q <= 1.0)) throw DomainError("N(q) diverges outside 0 < q <= 1");
    const double g1q = std::tgamma(1.0 + q);
    return std::pow(2.0, 2.0 * q - 1.5) * g1q * g1q /
           (std::sqrt(kPi) * q * std::tgamma(1.0 + 2.0 * q));
}

// --- return statistics ----------------------------------------------------

double no_return_probability(long x, double q) {
    if (x < 1 || q < 0.0 || q > 1.0) throw DomainError("need x >= 1, q in [0,1]");
    double prod = 1.0;
    for (long k = 2; k <= x; ++k)
        prod *= 1.0 - 2.0 * q / static_cast<double>(k);
    return prod;
}

std::pair<double, double> return_exponents(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("p in [0,1]");
    return {2.0 - p, 1.0 + p};
}

double partial_return_sum(long m, double q) {
    if (m < 1 || !(q > 0.0 && q <= 1.0))
        throw DomainError("need m >= 1, 0 < q <= 1");
    // term_1 = q absorbs the 2q / Gamma(2-2q) prefactor; the ratio
    // recurrence term_{k+1}/term_k = (k+1-2q)/(k+2) is Gamma-free and
    // stable, and handles q = 1 exactly (all terms beyond the first
    // vanish).
    double term = q;
    double sum = term;
    for (long k = 1; k < m; ++k) {
        term *= (static_cast<double>(k) + 1.0 - 2.0 * q) /
                (static_cast<double>(k) + 2.0);
        sum += term;
    }
    return sum;
}

// --- meal statistics ------------------------------------------------------

double meal_pdf(long r, double L, double q) {
    if (r < 1 || L < 3.0 || !(q > 0.0 && q < 1.0))
        throw DomainError("meal pdf needs r >= 1, L >= 3, 0 < q < 1");
    const double lr = std::log(2.0 * q) + std::lgamma(L) - std::lgamma(L - 2.0 * q) +
                      std::lgamma(L + r - 1.0 - 2.0 * q) - std::lgamma(L + r);
    return std::exp(lr);
}

double meal_pdf_scaled(double r_scaled, double q) {
    if (r_scaled < 0.0 || !(q > 0.0 && q < 1.0))
        throw DomainError("scaled meal pdf needs r~ >= 0, 0 < q < 1");
    return 2.0 * q * std::pow(1.0 + r_scaled, -2.0 * q - 1.0);
}

double mean_meal_scaled(double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("need 0 < q < 1");
    if (q > 0.5) return 1.0 / (2.0 * q - 1.0);
    return std::numeric_limits<double>::infinity();
}

double joint_meal_pdf_scaled(double r_scaled, double s_scaled, double q) {
    if (r_scaled < 0.0 || s_scaled < r_scaled || !(q > 0.0 && q < 1.0))
        throw DomainError("joint meal pdf needs 0 <= r~ <= s~, 0 < q < 1");
    return 4.0 * q * (1.0 - q) * std::pow(1.0 + r_scaled, 1.0 - 4.0 * q) *
           std::pow(1.0 + s_scaled, 2.0 * q - 3.0);
}

namespace {

// (  (1+s)^c - 1 ) / c, continuous through c = 0.
double powm1_over(double c, double log1ps) {
    if (c == 0.0) return log1ps;
    return std::expm1(c * log1ps) / c;
}

}  // namespace

double mean_ratio_r_over_s_quadrature(double q, double abs_tol) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("need 0 < q < 1");
    const double a = 1.0 - 4.0 * q;
    auto outer = [q, a](double s) {
        if (s <= 0.0) return 0.0;
        const double l = std::log1p(s);
        // inner = int_0^s r (1+r)^a dr, written without cancellation
        // at a = -1 and a = -2.
        const double inner = powm1_over(a + 2.0, l) - powm1_over(a + 1.0, l);
        return std::pow(1.0 + s, 2.0 * q - 3.0) * inner / s;
    };
    return 4.0 * q * (1.0 - q) * integrate_semi_infinite(outer, abs_tol);
}

double mean_ratio_r_over_s(double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("<r/s> diverges at q = 0, 1");
    if (std::abs(q - 0.5) < 1e-3 || std::abs(q - 0.75) < 1e-3)
        return mean_ratio_r_over_s_quadrature(q);
    const double om2q = 1.0 - 2.0 * q;
    return 1.0 - 2.0 * q * q / (om2q * om2q) -
           2.0 * kPi * q * (1.0 - q) / (om2q * (3.0 - 4.0 * q)) /
               std::tan(2.0 * kPi * q);
}

double rstar_lstar_ratio(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("ratio diverges at p = 0, 1");
    const double q = 1.0 - p;
    return (std::pow(2.0, 1.0 / (2.0 * q)) - 1.0) /
           (std::pow(2.0, 1.0 / (2.0 * p)) - 1.0);
}

// --- k-excited transition -------------------------------------------------

double critical_bias(long k) {
    if (k < 1) throw DomainError("k >= 1");
    return 0.5 * (1.0 + 1.0 / static_cast<double>(k));
}

double residual_density(double p) {
    if (!(p > 0.75)) throw DomainError("residual density defined for p > 3/4");
    const double v = 2.0 - 1.0 / (2.0 * p - 1.0);
    return v > 0.0 ? v : 0.0;
}

double one_cookie_domain_pdf(long len, double p) {
    if (len < 1 || p < 0.0 || p > 1.0) throw DomainError("len >= 1, p in [0,1]");
    return std::pow(p, static_cast<double>(len)) * (1.0 - p);
}

double transit_time_lower_bound(long k_defect, long L) {
    if (k_defect < 2 || k_defect > L) throw DomainError("need 2 <= k <= L");
    const double k = static_cast<double>(k_defect);
    double hsum = 0.0;
    for (long j = k_defect; j <= L; ++j) hsum += 1.0 / static_cast<double>(j);
    return 3.0 * (k - 2.0) + 2.0 * (k - 1.0) * (k - 2.0) * hsum;
}

double transit_time_recursion(long k_defect, long L) {
    if (k_defect < 2 || k_defect > L) throw DomainError("need 2 <= k <= L");
    // Cutoff at L: a defect that has grown past length L picks up no
    // further growth terms, so the seed is the empty-sum value 3(L-1).
    double t_next = 3.0 * static_cast<double>(L - 1);
    for (long j = L; j >= k_defect; --j) {
        const double k = static_cast<double>(j);
        const double e_minus = (k - 2.0) / k;
        t_next = 2.0 * (k - 2.0) + e_minus * (1.0 + t_next);
    }
    return t_next;
}

}  // namespace ewalk::analytic
