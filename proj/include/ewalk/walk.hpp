#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ewalk/rng.hpp"

namespace ewalk {

enum class Geometry { HalfLineReflecting, HalfLineAbsorbing, InfiniteLine };

enum class StopKind { FirstReturnToStart, FirstPassageToOrigin, HitSite, MaxTime };

struct StopRule {
    StopKind kind = StopKind::MaxTime;
    long target = 0;  // only used by HitSite
};

// Full experiment definition for one walk realization.
struct WalkConfig {
    int cookies_per_site = 1;  // k >= 1
    double bias_p = 0.7;       // right-hop probability when excited
    Geometry geometry = Geometry::InfiniteLine;
    long start_site = 0;
    long initial_gap = 0;  // pre-emptied interval [start-gap+1, start]
    StopRule stop{};
    long t_max = 100000;
    std::uint64_t master_seed = 0;
    std::uint64_t realization_index = 0;

    double bias_q() const { return 1.0 - bias_p; }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const WalkConfig& cfg);

// Cookie counts over the visited span.  Sites outside [span_left,
// span_right] implicitly hold exactly k cookies.  The visited set is a
// contiguous interval containing the start site.
class CookieField {
  public:
    CookieField() = default;
    CookieField(long start, int k) : anchor_(start), k_(k) {
        fwd_.push_back(static_cast<std::uint8_t>(k));
    }

    long span_left() const { return anchor_ - static_cast<long>(bwd_.size()); }
    long span_right() const { return anchor_ + static_cast<long>(fwd_.size()) - 1; }
    int cookies_per_site() const { return k_; }

    // Count at any site; unvisited sites report k.
    int count(long site) const {
        if (site >= anchor_) {
            std::size_t i = static_cast<std::size_t>(site - anchor_);
            return i < fwd_.size() ? fwd_[i] : k_;
        }
        std::size_t i = static_cast<std::size_t>(anchor_ - site) - 1;
        return i < bwd_.size() ? bwd_[i] : k_;
    }

    void set_count(long site, int c) { cell(site) = static_cast<std::uint8_t>(c); }

    // Decrement the count at `site`, visiting it first if needed.
    // Returns true if a cookie was present and consumed.
    bool eat(long site) {
        std::uint8_t& c = cell(site);
        if (c == 0) return false;
        --c;
        return true;
    }

    // Ensure `site` is within the stored span without eating.
    void visit(long site) { (void)cell(site); }

  private:
    std::uint8_t& cell(long site) {
        if (site >= anchor_) {
            std::size_t i = static_cast<std::size_t>(site - anchor_);
            while (i >= fwd_.size()) fwd_.push_back(static_cast<std::uint8_t>(k_));
            return fwd_[i];
        }
        std::size_t i = static_cast<std::size_t>(anchor_ - site) - 1;
        while (i >= bwd_.size()) bwd_.push_back(static_cast<std::uint8_t>(k_));
        return bwd_[i];
    }

    long anchor_ = 0;
    int k_ = 1;
    std::vector<std::uint8_t> fwd_;  // sites >= anchor
    std::vector<std::uint8_t> bwd_;  // sites < anchor, nearest first
};

// Walker position, excitation flag, cookie field, and the positions of
// the nearest uneaten cookies bracketing the eaten region around the
// start site.  y_left / y_right reduce to the classic last-cookie
// coordinates for k = 1; for k >= 2 they bound the zero-cookie run
// containing the start (and coincide when no such run exists).
struct WalkState {
    long x = 0;
    long t = 0;
    bool excited = false;
    CookieField field;
    long y_left = 0;
    long y_right = 0;
    bool has_y_left = true;  // false on the half-line (no cookie left of 0)
};

enum class Direction { Left, Right, Stay };

struct StepEvent {
    Direction direction = Direction::Stay;
    bool ate_cookie = false;
    long new_x = 0;
};

enum class Terminal { Returned, Absorbed, HitTarget, Truncated };

struct TraceSample {
    long t;
    long x;
    long y_left;
    long y_right;
};

struct RunOutcome {
    Terminal terminal = Terminal::Truncated;
    long t = 0;
    WalkState final_state;
    std::vector<TraceSample> trace;  // filled only when checkpoints given
};

// One completed right-then-left meal cycle: r consecutive cookies eaten
// from the right edge of the gap, then l from the left edge.
struct CycleRecord {
    long r = 0;
    long l = 0;
};

WalkState init_state(const WalkConfig& cfg);

StepEvent step(WalkState& state, double u, const WalkConfig& cfg);

// Terminal condition test used by run() and by the enumeration oracle.
std::optional<Terminal> stop_reason(const WalkState& state, const WalkConfig& cfg);

RunOutcome run(const WalkConfig& cfg,
               const std::vector<long>* checkpoints = nullptr);

// Meal-cycle experiment: k = 1 on the infinite line with an initial gap.
// Records (r, l) for each completed right-then-left cycle until t_max,
// or until max_cycles cycles have completed (0 = no cycle limit).
std::vector<CycleRecord> cycle_run(const WalkConfig& cfg, long max_cycles = 0);

}  // namespace ewalk
