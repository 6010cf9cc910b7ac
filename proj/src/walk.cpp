#include "ewalk/walk.hpp"

#include <algorithm>

namespace ewalk {

void validate(const WalkConfig& cfg) {
    if (cfg.cookies_per_site < 1)
        throw ConfigError("cookies-per-site must be >= 1");
    if (!(cfg.bias_p >= 0.0 && cfg.bias_p <= 1.0))
        throw ConfigError("bias p must lie in [0, 1]");
    if (cfg.initial_gap < 0) throw ConfigError("initial gap must be >= 0");
    if (cfg.t_max < 1) throw ConfigError("t_max must be >= 1");
    switch (cfg.geometry) {
        case Geometry::HalfLineAbsorbing:
            if (cfg.start_site < 1)
                throw ConfigError("absorbing half-line requires start_site >= 1");
            break;
        case Geometry::HalfLineReflecting:
            if (cfg.start_site < 0)
                throw ConfigError("reflecting half-line requires start_site >= 0");
            break;
        case Geometry::InfiniteLine:
            break;
    }
    if (cfg.geometry != Geometry::InfiniteLine &&
        cfg.start_site - cfg.initial_gap + 1 < 0)
        throw ConfigError("initial gap extends below the origin");
    if (cfg.stop.kind == StopKind::FirstPassageToOrigin &&
        cfg.geometry == Geometry::InfiniteLine && cfg.start_site == 0)
        throw ConfigError("first passage to origin needs start_site != 0");
}

namespace {

bool on_half_line(const WalkConfig& cfg) {
    return cfg.geometry != Geometry::InfiniteLine;
}

// y_right = smallest site >= start with a positive count (unvisited
// sites count as full).  y_left is the mirror image; absent on the
// half-line when no cookie remains at or left of the start.
void locate_extremes(WalkState& st, const WalkConfig& cfg) {
    long s = cfg.start_site;
    while (st.field.count(s) == 0) ++s;
    st.y_right = s;
    s = cfg.start_site;
    st.has_y_left = true;
    while (st.field.count(s) == 0) {
        if (s == 0 && on_half_line(cfg)) {
            st.has_y_left = false;
            break;
        }
        --s;
    }
    st.y_left = s;
}

void advance_right_extreme(WalkState& st) {
    while (st.field.count(st.y_right) == 0) ++st.y_right;
}

void retreat_left_extreme(WalkState& st, const WalkConfig& cfg) {
    if (!st.has_y_left) return;
    while (st.field.count(st.y_left) == 0) {
        if (st.y_left == 0 && on_half_line(cfg)) {
            st.has_y_left = false;
            return;
        }
        --st.y_left;
    }
}

void note_eaten(WalkState& st, long site, const WalkConfig& cfg) {
    if (st.field.count(site) > 0) return;  // partial eat, extremes unchanged
    bool was_right = (site == st.y_right);
    bool was_left = st.has_y_left && (site == st.y_left);
    if (was_right) advance_right_extreme(st);
    if (was_left) retreat_left_extreme(st, cfg);
}

}  // namespace

WalkState init_state(const WalkConfig& cfg) {
    validate(cfg);
    WalkState st;
    st.x = cfg.start_site;
    st.t = 0;
    st.field = CookieField(cfg.start_site, cfg.cookies_per_site);
    for (long s = cfg.start_site - cfg.initial_gap + 1; s <= cfg.start_site; ++s)
        st.field.set_count(s, 0);
    if (cfg.initial_gap == 0) {
        // The initial placement counts as an arrival.
        st.excited = st.field.eat(cfg.start_site);
    } else {
        st.excited = false;
    }
    locate_extremes(st, cfg);
    return st;
}

StepEvent step(WalkState& st, double u, const WalkConfig& cfg) {
    const double thr = st.excited ? cfg.bias_p : 0.5;
    const bool go_right = (u < thr);
    StepEvent ev;
    if (!go_right && st.x == 0 && cfg.geometry == Geometry::HalfLineReflecting) {
        ev.direction = Direction::Stay;
        ev.new_x = st.x;
        st.excited = false;
        st.t += 1;
        return ev;
    }
    const long nx = go_right ? st.x + 1 : st.x - 1;
    ev.direction = go_right ? Direction::Right : Direction::Left;
    ev.new_x = nx;
    st.x = nx;
    st.t += 1;
    if (nx == 0 && cfg.geometry == Geometry::HalfLineAbsorbing) {
        // Absorbed on arrival; the origin's cookie is never eaten.
        st.excited = false;
        return ev;
    }
    if (st.field.eat(nx)) {
        ev.ate_cookie = true;
        st.excited = true;
        note_eaten(st, nx, cfg);
    } else {
        st.excited = false;
    }
    return ev;
}

std::optional<Terminal> stop_reason(const WalkState& st, const WalkConfig& cfg) {
    if (cfg.geometry == Geometry::HalfLineAbsorbing && st.x == 0)
        return Terminal::Absorbed;
    switch (cfg.stop.kind) {
        case StopKind::FirstReturnToStart:
            if (st.t >= 1 && st.x == cfg.start_site) return Terminal::Returned;
            break;
        case StopKind::FirstPassageToOrigin:
            if (st.x == 0) return Terminal::Absorbed;
            break;
        case StopKind::HitSite:
            if (st.x == cfg.stop.target) return Terminal::HitTarget;
            break;
        case StopKind::MaxTime:
            break;
    }
    return std::nullopt;
}

RunOutcome run(const WalkConfig& cfg, const std::vector<long>* checkpoints) {
    RunOutcome out;
    WalkState st = init_state(cfg);
    StreamRng rng =
        StreamRng::for_realization(cfg.master_seed, cfg.realization_index);
    std::size_t next_cp = 0;
    auto record = [&](const WalkState& s) {
        while (checkpoints && next_cp < checkpoints->size() &&
               (*checkpoints)[next_cp] == s.t) {
            out.trace.push_back({s.t, s.x, s.has_y_left ? s.y_left : 0,
                                 s.y_right});
            ++next_cp;
        }
    };
    record(st);
    if (auto term = stop_reason(st, cfg)) {
        out.terminal = *term;
        out.t = 0;
        out.final_state = std::move(st);
        return out;
    }
    while (st.t < cfg.t_max) {
        step(st, rng.next_unit(), cfg);
        if (auto term = stop_reason(st, cfg)) {
            out.terminal = *term;
            out.t = st.t;
            out.final_state = std::move(st);
            return out;
        }
        record(st);
    }
    out.terminal = Terminal::Truncated;
    out.t = st.t;
    out.final_state = std::move(st);
    return out;
}

std::vector<CycleRecord> cycle_run(const WalkConfig& cfg, long max_cycles) {
    if (cfg.cookies_per_site != 1 || cfg.geometry != Geometry::InfiniteLine ||
        cfg.initial_gap < 1)
        throw ConfigError("cycle_run needs k=1, infinite line, initial_gap >= 1");
    std::vector<CycleRecord> cycles;
    WalkState st = init_state(cfg);
    StreamRng rng =
        StreamRng::for_realization(cfg.master_seed, cfg.realization_index);
    long r = 0, l = 0;
    bool in_cycle = false;
    while (st.t < cfg.t_max) {
        const long right_before = st.y_right;
        StepEvent ev = step(st, rng.next_unit(), cfg);
        if (!ev.ate_cookie) continue;
        const bool right_side = (ev.new_x == right_before);
        if (right_side) {
            if (in_cycle && l > 0) {
                cycles.push_back({r, l});
                r = 0;
                l = 0;
                if (max_cycles > 0 &&
                    static_cast<long>(cycles.size()) >= max_cycles)
                    return cycles;
            }
            in_cycle = true;
            ++r;
        } else if (in_cycle) {
            ++l;
        }
        // Left cookies eaten before the first right cookie are not part
        // of any right-then-left cycle and are dropped.
    }
    return cycles;
}

}  // namespace ewalk
