#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ewalk/walk.hpp"

namespace ewalk {

struct ResourceError : std::runtime_error {
    long achieved_t;
    ResourceError(const std::string& msg, long t)
        : std::runtime_error(msg), achieved_t(t) {}
};

// Exact propagation of the joint distribution P(x, y) of walker
// position x and last-cookie position y over the wedge 0 <= x <= y,
// for the 1-excited walk on the half-line.  The excited state is
// (y, y): the walker sits on the cookie it has just eaten.
//
// The boundary at the origin is either absorbing (walk starts at
// x = 1, cookie at 1, P(x,y,0) = delta_{x,1} delta_{y,1}) or
// reflecting (walk starts at x = 0; after the forced first move the
// distribution at t = 1 is P(1,1) = p, P(0,1) = q).
//
// Truncation is explicit: rows above y_trunc, or rows pruned below
// row_prune mass, are added to the `leaked` upper bound rather than
// silently dropped.
class WedgePropagator {
  public:
    enum class Boundary { Absorbing, Reflecting };

    // grow_tol: top-row excited mass below this threshold is leaked
    // instead of growing a new row (0 = exact growth).  row_prune:
    // bottom rows whose total mass falls below this are leaked.  Both
    // feed the explicit `leaked` upper bound.
    WedgePropagator(double p, Boundary boundary, long y_mem_cap = 20000,
                    long y_trunc = -1, double row_prune = 0.0,
                    double grow_tol = 0.0);

    void step();
    void advance_to(long t);

    long t() const { return t_; }
    double survival() const { return 1.0 - absorbed_; }
    double absorbed() const { return absorbed_; }
    double leaked() const { return leaked_; }
    long y_lo() const { return y_lo_; }
    long y_hi() const { return y_hi_; }

    double mass(long x, long y) const;
    double live_mass() const;
    // live + absorbed + leaked - 1
    double conservation_defect() const;

    std::vector<double> walker_marginal() const;  // index x
    std::vector<double> cookie_marginal() const;  // index y

  private:
    double p_, q_;
    Boundary boundary_;
    long y_mem_cap_;
    long y_trunc_;
    double row_prune_;
    double grow_tol_;
    long t_ = 0;
    long y_lo_ = 1, y_hi_ = 1;
    double absorbed_ = 0.0, leaked_ = 0.0;
    std::vector<std::vector<double>> cur_, nxt_;  // [y][x], x = 0..y

    void ensure_row(std::vector<std::vector<double>>& buf, long y);
};

// Scaling-function samples (mu = y / sqrt(t), Phi = (y/2) P(y,t))
// extracted from a last-cookie marginal.  Meaningful once sqrt(t) is
// large (>= ~30).
struct PhiSample {
    double mu;
    double phi;
};
std::vector<PhiSample> scaling_from_marginal(const std::vector<double>& cookie_marginal,
                                             long t);

// Exhaustive path enumeration oracle: sums over all 2^T left/right
// draw sequences, evaluating the walk-core step rule exactly.  Path
// probabilities are products of p, q, 1/2 factors.  Refused above
// T = 20.
struct OracleTable {
    long horizon = 0;
    // Joint law of (x, y_left, y_right) for live walks; y_left is
    // LONG_MIN when absent (half-line with no cookie left of 0).
    std::vector<std::map<std::tuple<long, long, long>, double>> joint;
    std::vector<std::map<long, double>> walker;      // P(x, t), live walks
    std::vector<double> first_passage;               // F(t), stop events at t
    std::vector<double> survival;                    // S(t)
    // Mean eaten cookies per site, E[k - count(site)], visited sites.
    std::vector<std::map<long, double>> mean_eaten;

    double live_mass(long t) const;
};

OracleTable enumerate_exact(const WalkConfig& cfg, long horizon);

}  // namespace ewalk
