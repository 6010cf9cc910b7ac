// Command-line driver tying the three computation paths together:
// Monte Carlo ensembles (simulate), exact wedge propagation
// (propagate), closed forms (analytic), and the analysis passes
// (fit, collapse).
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 resource
// limit.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ewalk/analytic.hpp"
#include "ewalk/csvio.hpp"
#include "ewalk/ensemble.hpp"
#include "ewalk/estimators.hpp"
#include "ewalk/exact.hpp"
#include "ewalk/fit.hpp"
#include "ewalk/walk.hpp"

using nlohmann::json;
using namespace ewalk;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Geometry parse_geometry(const std::string& s) {
    if (s == "infinite") return Geometry::InfiniteLine;
    if (s == "reflecting") return Geometry::HalfLineReflecting;
    if (s == "absorbing") return Geometry::HalfLineAbsorbing;
    throw UsageError("unknown geometry: " + s);
}

StopRule parse_stop(const std::string& s) {
    if (s == "max-time") return {StopKind::MaxTime, 0};
    if (s == "first-return") return {StopKind::FirstReturnToStart, 0};
    if (s == "first-passage") return {StopKind::FirstPassageToOrigin, 0};
    if (s.rfind("hit:", 0) == 0)
        return {StopKind::HitSite, std::stol(s.substr(4))};
    throw UsageError("unknown stop rule: " + s);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_manifest(const std::string& out_dir, const json& params,
                    const std::vector<std::string>& files, double wall_s) {
    json m;
    m["tool_version"] = kToolVersion;
    m["params"] = params;
    m["wall_clock_s"] = wall_s;
    json digests = json::object();
    for (const auto& f : files)
        digests[f] = file_digest(out_dir + "/" + f);
    m["output_digests"] = digests;
    std::ofstream mf(out_dir + "/manifest.json", std::ios::binary);
    mf << m.dump(2) << "\n";
}

// --- simulate -------------------------------------------------------------

int cmd_simulate(int k, double p, const std::string& geometry,
                 const std::string& stop, long realizations, long tmax,
                 std::uint64_t seed, long start, long initial_gap,
                 const std::string& observables, long site_cap,
                 const std::string& disp_at, double disp_lo, double disp_hi,
                 int disp_bins, int threads, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    WalkConfig cfg;
    cfg.cookies_per_site = k;
    cfg.bias_p = p;
    cfg.geometry = parse_geometry(geometry);
    cfg.stop = parse_stop(stop);
    cfg.t_max = tmax;
    cfg.master_seed = seed;
    cfg.start_site = start;
    cfg.initial_gap = initial_gap;
    validate(cfg);

    std::vector<std::string> files;
    const std::vector<long> checkpoints = geometric_times(tmax);
    const auto obs = split_list(observables);
    auto wants = [&obs](const std::string& name) {
        for (const auto& o : obs)
            if (o == name) return true;
        return false;
    };

    if (wants("stop-times")) {
        int bins = static_cast<int>(
            std::ceil(std::log(static_cast<double>(tmax)) / std::log(1.25)));
        StopTimeCollector total(
            EmpiricalHistogram::logarithmic(1.0, 1.25, std::max(bins, 1)));
        run_ensemble(cfg, realizations, threads, nullptr, total);
        ResultTable t;
        t.columns = {"bin_lo", "bin_hi", "count", "density"};
        const auto& h = total.hist();
        for (int i = 0; i < h.bins(); ++i)
            t.add_row({h.edge(i), h.edge(i + 1), static_cast<long>(h.count(i)),
                       h.density(i)});
        write_csv(t, out_dir + "/stop_times.csv");
        files.push_back("stop_times.csv");

        ResultTable s;
        s.columns = {"n_stopped", "n_truncated", "mean_t", "stderr_t"};
        s.add_row({static_cast<long>(total.moments().n), total.truncated(),
                   total.moments().mean(), total.moments().stderr_mean()});
        write_csv(s, out_dir + "/stop_summary.csv");
        files.push_back("stop_summary.csv");
    }

    if (wants("series") || wants("disp")) {
        std::map<long, EmpiricalHistogram> protos;
        if (wants("disp")) {
            for (const auto& ts : split_list(disp_at))
                protos.emplace(std::stol(ts), EmpiricalHistogram::uniform(
                                                  disp_lo, disp_hi, disp_bins));
        }
        CheckpointCollector total(checkpoints, protos);
        run_ensemble(cfg, realizations, threads, &checkpoints, total);
        if (wants("series")) {
            ResultTable t;
            t.columns = {"t", "n", "mean_x", "stderr_x", "mean_y", "stderr_y"};
            for (std::size_t j = 0; j < checkpoints.size(); ++j) {
                const auto& mx = total.x_at(j);
                const auto& my = total.y_at(j);
                t.add_row({checkpoints[j], static_cast<long>(mx.n), mx.mean(),
                           mx.stderr_mean(), my.mean(), my.stderr_mean()});
            }
            write_csv(t, out_dir + "/series.csv");
            files.push_back("series.csv");
        }
        for (const auto& [tt, _] : protos) {
            const auto& h = total.displacement(tt);
            ResultTable t;
            t.columns = {"x_lo", "x_hi", "count", "density"};
            for (int i = 0; i < h.bins(); ++i)
                t.add_row({h.edge(i), h.edge(i + 1),
                           static_cast<long>(h.count(i)), h.density(i)});
            const std::string name = "disp_" + std::to_string(tt) + ".csv";
            write_csv(t, out_dir + "/" + name);
            files.push_back(name);
        }
    }

    if (wants("profile") || wants("domains")) {
        ProfileCollector total(site_cap);
        run_ensemble(cfg, realizations, threads, nullptr, total);
        if (wants("profile")) {
            ProfileScan ps = total.profile();
            ResultTable t;
            t.columns = {"site", "scaled_x", "mean_count"};
            for (std::size_t i = 0; i < ps.scaled_x.size(); ++i)
                t.add_row({static_cast<long>(i), ps.scaled_x[i],
                           ps.mean_count[i]});
            write_csv(t, out_dir + "/profile.csv");
            files.push_back("profile.csv");
        }
        if (wants("domains")) {
            ResultTable t;
            t.columns = {"length", "one_cookie_count", "zero_cookie_count"};
            const auto& h1 = total.one_cookie_runs();
            const auto& h0 = total.zero_cookie_runs();
            for (int i = 0; i < h1.bins(); ++i)
                t.add_row({static_cast<long>(i + 1),
                           static_cast<long>(h1.count(i)),
                           static_cast<long>(h0.count(i))});
            write_csv(t, out_dir + "/domains.csv");
            files.push_back("domains.csv");
        }
    }

    if (wants("extremes")) {
        ExtremeCookieCollector total(8.0 * std::sqrt(static_cast<double>(tmax)),
                                     400);
        run_ensemble(cfg, realizations, threads, nullptr, total);
        ResultTable t;
        t.columns = {"bin_lo", "bin_hi", "right_count", "left_count"};
        for (int i = 0; i < total.right().bins(); ++i)
            t.add_row({total.right().edge(i), total.right().edge(i + 1),
                       static_cast<long>(total.right().count(i)),
                       static_cast<long>(total.left().count(i))});
        write_csv(t, out_dir + "/extremes.csv");
        files.push_back("extremes.csv");

        ResultTable s;
        s.columns = {"median_right", "median_left", "median_ratio"};
        s.add_row({histogram_median(total.right()),
                   histogram_median(total.left()), total.median_ratio()});
        write_csv(s, out_dir + "/extremes_summary.csv");
        files.push_back("extremes_summary.csv");
    }

    if (wants("cycles")) {
        std::vector<CycleRecord> all;
        for (long i = 0; i < realizations; ++i) {
            WalkConfig c = cfg;
            c.realization_index = cfg.realization_index + i;
            auto cy = cycle_run(c);
            all.insert(all.end(), cy.begin(), cy.end());
        }
        CycleStats st = cycle_statistics(all);
        ResultTable t;
        t.columns = {"cycles", "mean_ratio", "ci_halfwidth", "reliable"};
        t.add_row({st.cycles, st.mean_ratio, st.ci_halfwidth,
                   static_cast<long>(st.reliable ? 1 : 0)});
        write_csv(t, out_dir + "/cycles.csv");
        files.push_back("cycles.csv");
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    json params = {{"command", "simulate"},  {"k", k},
                   {"p", p},                 {"geometry", geometry},
                   {"stop", stop},           {"realizations", realizations},
                   {"tmax", tmax},           {"seed", seed},
                   {"start", start},         {"initial_gap", initial_gap},
                   {"observables", observables}, {"threads", threads}};
    write_manifest(out_dir, params, files, wall);
    return 0;
}

// --- propagate ------------------------------------------------------------

int cmd_propagate(double p, long tmax, const std::string& boundary,
                  double leak_tol, long mem_cap, long y_trunc,
                  const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    const bool absorbing = (boundary == "absorbing");
    if (!absorbing && boundary != "reflecting")
        throw UsageError("boundary must be absorbing or reflecting");

    // Top-row growth threshold: spread the leak budget over the run.
    const double grow_tol = leak_tol / (4.0 * static_cast<double>(tmax));
    WedgePropagator wp(p,
                       absorbing ? WedgePropagator::Boundary::Absorbing
                                 : WedgePropagator::Boundary::Reflecting,
                       mem_cap, y_trunc, grow_tol, grow_tol);

    const std::vector<long> checkpoints = geometric_times(tmax);
    ResultTable surv;
    surv.columns = {"t", "survival", "leaked"};
    long achieved = wp.t();
    bool resource_hit = false;
    std::string resource_msg;
    for (long t : checkpoints) {
        if (t < wp.t()) continue;
        try {
            wp.advance_to(t);
        } catch (const ResourceError& e) {
            resource_hit = true;
            resource_msg = e.what();
            achieved = e.achieved_t;
            break;
        }
        achieved = wp.t();
        surv.add_row({t, wp.survival(), wp.leaked()});
    }
    std::vector<std::string> files;
    write_csv(surv, out_dir + "/survival.csv");
    files.push_back("survival.csv");

    {
        ResultTable t;
        t.columns = {"x", "mass"};
        const auto wm = wp.walker_marginal();
        for (std::size_t x = 0; x < wm.size(); ++x)
            t.add_row({static_cast<long>(x), wm[x]});
        write_csv(t, out_dir + "/walker_marginal.csv");
        files.push_back("walker_marginal.csv");
    }
    {
        ResultTable t;
        t.columns = {"y", "mass"};
        const auto cm = wp.cookie_marginal();
        for (std::size_t y = 0; y < cm.size(); ++y)
            t.add_row({static_cast<long>(y), cm[y]});
        write_csv(t, out_dir + "/cookie_marginal.csv");
        files.push_back("cookie_marginal.csv");
    }
    if (!absorbing && !resource_hit) {
        ResultTable t;
        t.columns = {"mu", "phi"};
        for (const PhiSample& s : scaling_from_marginal(wp.cookie_marginal(),
                                                        wp.t()))
            t.add_row({s.mu, s.phi});
        write_csv(t, out_dir + "/phi.csv");
        files.push_back("phi.csv");
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    json params = {{"command", "propagate"}, {"p", p},
                   {"tmax", tmax},           {"boundary", boundary},
                   {"leak_tol", leak_tol},   {"mem_cap", mem_cap},
                   {"y_trunc", y_trunc},     {"achieved_t", achieved}};
    if (resource_hit) params["resource_error"] = resource_msg;
    write_manifest(out_dir, params, files, wall);
    if (resource_hit) {
        std::fprintf(stderr, "resource limit: %s (achieved t=%ld)\n",
                     resource_msg.c_str(), achieved);
        return 4;
    }
    return 0;
}

// --- analytic -------------------------------------------------------------

int cmd_analytic(const std::string& op, const std::map<std::string, double>& a) {
    auto get = [&a](const std::string& key) {
        auto it = a.find(key);
        if (it == a.end()) throw UsageError("missing parameter --" + key);
        return it->second;
    };
    json out;
    out["op"] = op;
    double value = 0.0;
    double error_bound = 0.0;
    if (op == "critical-bias") {
        value = analytic::critical_bias(static_cast<long>(get("k")));
    } else if (op == "mean-hit-time") {
        value = analytic::mean_hit_time_last_cookie(get("n"), get("q"));
    } else if (op == "phi") {
        value = analytic::phi_general(get("mu"), get("q"));
        error_bound = 1e-12 * value;
    } else if (op == "phi-half") {
        value = analytic::phi_half(get("mu"));
        error_bound = 1e-12 * value;
    } else if (op == "norm-N") {
        value = analytic::norm_N(get("q"));
    } else if (op == "exit-time-reflecting") {
        value = analytic::exit_time_reflecting(get("k"), get("x0"));
    } else if (op == "mean-ratio") {
        value = analytic::mean_ratio_r_over_s(get("q"));
        error_bound = 1e-8;
    } else if (op == "rstar-lstar") {
        value = analytic::rstar_lstar_ratio(get("p"));
    } else if (op == "residual-density") {
        value = analytic::residual_density(get("p"));
    } else if (op == "transit-bound") {
        value = analytic::transit_time_lower_bound(static_cast<long>(get("k")),
                                                   static_cast<long>(get("L")));
    } else if (op == "no-return") {
        value = analytic::no_return_probability(static_cast<long>(get("x")),
                                                get("q"));
    } else if (op == "cumulant-coefficient") {
        value = analytic::cumulant_coefficient(static_cast<long>(get("l")));
        error_bound = 1e-13 * value;
    } else {
        throw UsageError("unknown analytic op: " + op);
    }
    json params = json::object();
    for (const auto& [k, v] : a) params[k] = v;
    out["params"] = params;
    out["value"] = value;
    out["error_bound"] = error_bound;
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

// --- fit / collapse -------------------------------------------------------

ResultTable read_csv(const std::string& path) {
    const std::string data = read_file(path);
    ResultTable t;
    std::stringstream ss(data);
    std::string line;
    bool header = true;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (header) {
            t.columns = cells;
            header = false;
        } else {
            std::vector<Cell> row;
            for (auto& c : cells) row.emplace_back(c);
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

std::size_t column_index(const ResultTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    throw UsageError("no column named '" + name + "' in input table");
}

std::vector<double> column_values(const ResultTable& t, const std::string& name) {
    const std::size_t i = column_index(t, name);
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const auto& row : t.rows)
        v.push_back(std::stod(std::get<std::string>(row[i])));
    return v;
}

int cmd_fit(const std::string& input, const std::string& xcol,
            const std::string& ycol, double lo, double hi) {
    ResultTable t = read_csv(input);
    std::vector<double> xs = column_values(t, xcol);
    std::vector<double> ys = column_values(t, ycol);
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] >= lo && xs[i] <= hi && ys[i] > 0.0) {
            fx.push_back(xs[i]);
            fy.push_back(ys[i]);
        }
    LinearFit f = loglog_fit(fx, fy);
    json out = {{"input", input},       {"x", xcol},
                {"y", ycol},            {"window", {lo, hi}},
                {"slope", f.slope},     {"stderr", f.stderr_slope},
                {"intercept", f.intercept}, {"r2", f.r2},
                {"points", f.points}};
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

Curve curve_from_disp(const std::string& path, double* sigma_out) {
    ResultTable t = read_csv(path);
    std::vector<double> lo = column_values(t, "x_lo");
    std::vector<double> hi = column_values(t, "x_hi");
    std::vector<double> density = column_values(t, "density");
    // moments from the binned data
    double w = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double c = 0.5 * (lo[i] + hi[i]);
        const double m = density[i] * (hi[i] - lo[i]);
        w += m;
        s1 += m * c;
        s2 += m * c * c;
    }
    if (w <= 0.0) throw UsageError("empty displacement histogram: " + path);
    const double mean = s1 / w;
    const double var = s2 / w - mean * mean;
    const double sigma = std::sqrt(var > 0.0 ? var : 1.0);
    if (sigma_out) *sigma_out = sigma;
    Curve c;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (density[i] <= 0.0) continue;
        c.x.push_back(0.5 * (lo[i] + hi[i]) / sigma);
        c.y.push_back(sigma * density[i]);
    }
    return c;
}

int cmd_collapse(const std::string& input_a, const std::string& input_b,
                 double floor, double smooth_frac, const std::string& out_csv) {
    double sa = 0.0, sb = 0.0;
    Curve a = curve_from_disp(input_a, &sa);
    Curve b = curve_from_disp(input_b, &sb);
    if (smooth_frac > 0.0) {
        a = smooth_curve(a, smooth_frac);
        b = smooth_curve(b, smooth_frac);
    }
    const double metric = overlap_metric(a, b, floor);
    if (!out_csv.empty()) {
        ResultTable t;
        t.columns = {"curve", "x_scaled", "p_scaled"};
        for (std::size_t i = 0; i < a.x.size(); ++i)
            t.add_row({std::string("a"), a.x[i], a.y[i]});
        for (std::size_t i = 0; i < b.x.size(); ++i)
            t.add_row({std::string("b"), b.x[i], b.y[i]});
        write_csv(t, out_csv);
    }
    json out = {{"input_a", input_a}, {"input_b", input_b},
                {"sigma_a", sa},      {"sigma_b", sb},
                {"floor", floor},     {"smooth_frac", smooth_frac},
                {"metric", metric}};
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-excited random walk toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble runs");
    int k = 1;
    double p = 0.7;
    std::string geometry = "infinite", stop = "max-time";
    long realizations = 1000, tmax = 10000, start = 0, initial_gap = 0;
    std::uint64_t seed = 1;
    std::string observables = "series";
    long site_cap = 10000;
    std::string disp_at;
    double disp_lo = -1000, disp_hi = 1000;
    int disp_bins = 500, threads = 0;
    std::string out_dir = "out";
    sim->add_option("--k", k, "cookies per site");
    sim->add_option("--p", p, "right-hop bias when excited");
    sim->add_option("--geometry", geometry, "infinite|reflecting|absorbing");
    sim->add_option("--stop", stop, "max-time|first-return|first-passage|hit:N");
    sim->add_option("--realizations", realizations);
    sim->add_option("--tmax", tmax);
    sim->add_option("--seed", seed);
    sim->add_option("--start", start);
    sim->add_option("--initial-gap", initial_gap);
    sim->add_option("--observables", observables,
                    "comma list: stop-times,series,disp,profile,domains,"
                    "extremes,cycles");
    sim->add_option("--site-cap", site_cap);
    sim->add_option("--disp-at", disp_at, "comma list of checkpoint times");
    sim->add_option("--disp-lo", disp_lo);
    sim->add_option("--disp-hi", disp_hi);
    sim->add_option("--disp-bins", disp_bins);
    sim->add_option("--threads", threads, "0 = library default");
    sim->add_option("--out", out_dir);

    // propagate
    auto* prop = app.add_subcommand("propagate", "exact wedge propagation");
    double pp = 0.7, leak_tol = 1e-12;
    long ptmax = 10000, mem_cap = 20000, y_trunc = -1;
    std::string boundary = "absorbing", pout = "out";
    prop->add_option("--p", pp);
    prop->add_option("--tmax", ptmax);
    prop->add_option("--boundary", boundary, "absorbing|reflecting");
    prop->add_option("--leak-tol", leak_tol);
    prop->add_option("--mem-cap", mem_cap);
    prop->add_option("--y-trunc", y_trunc,
                     "hard last-cookie cap; P(y,t) stays exact for y below "
                     "it (-1 = none)");
    prop->add_option("--out", pout);

    // analytic
    auto* ana = app.add_subcommand("analytic", "closed-form values");
    std::string op;
    ana->add_option("op", op, "operation name")->required();
    std::map<std::string, double> aparams;
    for (const char* key : {"k", "n", "q", "p", "mu", "x0", "x", "l", "L"}) {
        ana->add_option_function<double>(
            std::string("--") + key,
            [&aparams, key](double v) { aparams[key] = v; });
    }

    // fit
    auto* fit = app.add_subcommand("fit", "log-log least squares on a table");
    std::string finput, fx = "t", fy = "survival";
    double flo = 1.0, fhi = 1e18;
    fit->add_option("--input", finput)->required();
    fit->add_option("--x", fx);
    fit->add_option("--y", fy);
    fit->add_option("--lo", flo);
    fit->add_option("--hi", fhi);

    // collapse
    auto* col = app.add_subcommand("collapse", "scaled-curve overlap metric");
    std::string ca, cb, cout_csv;
    double cfloor = 1e-3, csmooth = 0.0025;
    col->add_option("--input-a", ca)->required();
    col->add_option("--input-b", cb)->required();
    col->add_option("--floor", cfloor);
    col->add_option("--smooth", csmooth);
    col->add_option("--out", cout_csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(k, p, geometry, stop, realizations, tmax, seed,
                                start, initial_gap, observables, site_cap,
                                disp_at, disp_lo, disp_hi, disp_bins, threads,
                                out_dir);
        if (prop->parsed())
            return cmd_propagate(pp, ptmax, boundary, leak_tol, mem_cap,
                                 y_trunc, pout);
        if (ana->parsed()) return cmd_analytic(op, aparams);
        if (fit->parsed()) return cmd_fit(finput, fx, fy, flo, fhi);
        if (col->parsed())
            return cmd_collapse(ca, cb, cfloor, csmooth, cout_csv);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 4;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const analytic::DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
