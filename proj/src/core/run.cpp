#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <json.hpp>

#include "error.hpp"
#include "godunov.hpp"
#include "hydro.hpp"
#include "io.hpp"
#include "passage.hpp"
#include "pde_check.hpp"
#include "rng.hpp"
#include "shape.hpp"
#include "speed_field.hpp"
#include "tasep.hpp"
#include "util.hpp"

namespace th {

namespace {

using nlohmann::json;
using clock_type = std::chrono::steady_clock;

struct RunContext {
    const Config& cfg;
    std::string out_dir;
    json manifest;
    std::vector<std::string> outputs;
    clock_type::time_point t0 = clock_type::now();
    clock_type::time_point stage_t0 = clock_type::now();

    explicit RunContext(const Config& c) : cfg(c) {
        const char* env = std::getenv("TASEPHYDRO_OUT_DIR");
        out_dir = env && *env ? env : cfg.str_or("out", "out");
        ensure_dir(out_dir);
        manifest["version"] = kVersion;
        manifest["config"] = cfg.echo();
        manifest["stages"] = json::array();
    }
    std::string path(const std::string& name) const { return out_dir + "/" + name; }
    void stage(const std::string& name) {
        auto now = clock_type::now();
        double ms = std::chrono::duration<double, std::milli>(now - stage_t0).count();
        manifest["stages"].push_back({{"name", name}, {"ms", ms}});
        stage_t0 = now;
    }
    void note_output(const std::string& p) { outputs.push_back(p); }
    RunResult finish(bool passed, const std::string& summary) {
        json outs = json::array();
        for (const auto& p : outputs)
            outs.push_back({{"path", p}, {"fnv1a64", fnv1a64_hex(p)}});
        manifest["outputs"] = outs;
        manifest["passed"] = passed;
        manifest["wall_ms"] =
            std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
        manifest["summary"] = summary;
        write_file_atomic(path("manifest.json"), manifest.dump(2) + "\n");
        return RunResult{passed, manifest.dump(2), summary};
    }
};

FieldPtr load_field(const Config& cfg) {
    if (cfg.has("speed_text")) return parse_speed_field(cfg.str("speed_text"));
    return load_speed_field(cfg.str("speed"));
}

std::vector<double> linspace(double a, double b, int64_t k) {
    require(k >= 2, errc::invalid_argument, "need at least 2 samples");
    std::vector<double> xs(k);
    for (int64_t i = 0; i < k; ++i) xs[i] = a + (b - a) * i / (k - 1.0);
    return xs;
}

// ---- experiments -------------------------------------------------------------

RunResult run_lpp_lln(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c = load_field(cfg);
    Point start{cfg.num_or("a", 0.0), cfg.num_or("b", 0.0)};
    Point target{cfg.num("x"), cfg.num("y")};
    auto ns = cfg.int_list("n");
    for (int64_t n : ns)
        require(n >= 1, errc::invalid_argument, "n entries must be positive");
    int replicas = static_cast<int>(cfg.int_or("replicas", 4));
    uint64_t seed = cfg.uint_or("seed", 1);
    size_t cap = static_cast<size_t>(cfg.int_or("mem_cap_mb", 4096));
    auto table = lln_estimate(c, start, target, ns, replicas, seed, cap);
    ctx.stage("lln");
    CsvWriter csv(ctx.path("lln.csv"), {"n", "replica", "value", "mean", "stderr"});
    for (size_t a = 0; a < table.ns.size(); ++a)
        for (int r = 0; r < replicas; ++r) {
            const auto& row = table.rows[a * replicas + r];
            csv.row({static_cast<double>(row.n), static_cast<double>(row.replica), row.value,
                     table.mean[a], table.stderr_[a]});
        }
    csv.close();
    ctx.note_output(ctx.path("lln.csv"));
    char buf[128];
    std::snprintf(buf, sizeof(buf), "lpp_lln: mean(n=%lld) = %.6f",
                  static_cast<long long>(table.ns.back()), table.mean.back());
    return ctx.finish(true, buf);
}

RunResult run_shape(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c = load_field(cfg);
    Point start{cfg.num_or("a", 0.0), cfg.num_or("b", 0.0)};
    double w = cfg.num("w"), hgt = cfg.num("hext");
    double h = cfg.num_or("h", 1.0 / 200);
    ValueGrid grid(c, start, w, hgt, h);
    ctx.stage("grid");
    CsvWriter csv(ctx.path("shape.csv"), {"x", "y", "value"});
    int stride = std::max(1, static_cast<int>(cfg.int_or("stride", 1)));
    for (int j = 0; j <= grid.ny(); j += stride)
        for (int i = 0; i <= grid.nx(); i += stride)
            csv.row({start.x + i * h, start.y + j * h, grid.at(i, j)});
    csv.close();
    ctx.note_output(ctx.path("shape.csv"));
    return ctx.finish(true, "shape: grid written");
}

RunResult run_level_curve(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c = load_field(cfg);
    double q = cfg.num_or("q", 0.0);
    double v0q = cfg.num_or("v0q", 0.0);
    double t = cfg.num("t");
    auto xr = cfg.num_list("xrange");
    require(xr.size() == 2 && xr[0] < xr[1], errc::invalid_argument, "xrange must be a,b");
    int64_t k = cfg.int_or("samples", 101);
    LevelCurveOptions lopt;
    lopt.h = cfg.num_or("h", 1.0 / 48);
    LevelCurveSolver solver(c, {q - v0q, -v0q}, xr[0], xr[1], t, lopt);
    CsvWriter csv(ctx.path("level_curve.csv"), {"x", "g"});
    for (double x : linspace(xr[0], xr[1], k)) csv.row({x, solver.g(x, t)});
    csv.close();
    ctx.stage("level_curve");
    ctx.note_output(ctx.path("level_curve.csv"));
    return ctx.finish(true, "level_curve: written");
}

RunResult run_tasep(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c_tilde = load_field(cfg);
    InitialData init = InitialData::parse(cfg.str_or("init", "step"));
    int64_t n = cfg.integer("n");
    require(n >= 1, errc::invalid_argument, "n must be positive");
    double t = cfg.num("t"); // macroscopic time
    auto win = cfg.num_list("window");
    require(win.size() == 2 && win[0] < win[1], errc::invalid_argument, "window must be a,b");
    int64_t lo = static_cast<int64_t>(std::floor(win[0] * n));
    int64_t hi = static_cast<int64_t>(std::ceil(win[1] * n));
    int replicas = static_cast<int>(cfg.int_or("replicas", 1));
    uint64_t seed = cfg.uint_or("seed", 1);
    auto record = cfg.has("record") ? cfg.num_list("record") : std::vector<double>{t};

    bool all_valid = true;
    for (int r = 0; r < replicas; ++r) {
        uint64_t rs = rng::replica_seed(seed, r);
        auto traj = evolve_heights(c_tilde, init, n, lo, hi, n * t, rs);
        all_valid = all_valid && traj.valid;
        std::string name = replicas > 1 ? "tasep_r" + std::to_string(r) + ".csv" : "tasep.csv";
        CsvWriter csv(ctx.path(name), {"time", "site", "height", "occupation"});
        for (double tm : record) {
            auto h = traj.heights_at(tm * n);
            for (int64_t i = lo; i <= hi; ++i) {
                double occ = i < hi ? static_cast<double>(h[i - lo + 1] - h[i - lo]) : 0.0;
                csv.row({tm, static_cast<double>(i), static_cast<double>(h[i - lo]), occ});
            }
        }
        csv.close();
        ctx.note_output(ctx.path(name));
    }
    ctx.stage("tasep");
    return ctx.finish(all_valid, all_valid ? "tasep: ok" : "tasep: buffer overrun");
}

RunResult run_hydro(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c_tilde = load_field(cfg);
    InitialData init = InitialData::parse(cfg.str_or("init", "step"));
    double t = cfg.num("t");
    auto xr = cfg.num_list("xrange");
    require(xr.size() == 2 && xr[0] < xr[1], errc::invalid_argument, "xrange must be a,b");
    int64_t k = cfg.int_or("samples", 201);
    HydroOptions opt;
    opt.grid_h = cfg.num_or("h", opt.grid_h);
    opt.dq = cfg.num_or("dq", opt.dq);
    opt.threads = static_cast<int>(cfg.int_or("threads", 0));
    HydroSolver solver(c_tilde, init, t * 1.01 + 1e-6, opt);
    Profile prof = solver.profile(linspace(xr[0], xr[1], k), t);
    ctx.stage("profile");
    CsvWriter csv(ctx.path("hydro.csv"), {"x", "v", "rho", "qstar", "case"});
    const char* names[3] = {"interior", "contact0", "contact1"};
    for (size_t i = 0; i < prof.x.size(); ++i)
        csv.row_mixed({format_double(prof.x[i]), format_double(prof.v[i]),
                       format_double(prof.rho[i]), format_double(prof.qstar[i]),
                       names[prof.contact_case[i]]});
    csv.close();
    ctx.note_output(ctx.path("hydro.csv"));
    auto rep = maximizer_diagnostics(solver, prof);
    ctx.stage("diagnostics");
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "hydro: %d interior / %d contact0 / %d contact1, level residual %.2e",
                  rep.interior, rep.contact_floor, rep.contact_wall, rep.max_level_residual);
    return ctx.finish(rep.ok, buf);
}

RunResult run_godunov(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c_tilde = load_field(cfg);
    InitialData init = InitialData::parse(cfg.str_or("init", "step"));
    double t = cfg.num("t");
    double dx = cfg.num_or("dx", 1.0 / 400);
    auto xr = cfg.num_list("xrange");
    require(xr.size() == 2 && xr[0] < xr[1], errc::invalid_argument, "xrange must be a,b");
    auto run = godunov_run(c_tilde, init, xr[0], xr[1], t, dx, {t});
    ctx.stage("godunov");
    CsvWriter csv(ctx.path("godunov.csv"), {"x", "rho"});
    for (size_t i = 0; i < run.rho.size(); ++i)
        csv.row({run.cell_center(static_cast<int>(i)), run.rho[i]});
    csv.close();
    ctx.note_output(ctx.path("godunov.csv"));
    bool ok = run.mass_defect_max <= 1e-12 && run.overshoot_max <= 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "godunov: mass defect %.2e, overshoot %.2e",
                  run.mass_defect_max, run.overshoot_max);
    return ctx.finish(ok, buf);
}

RunResult run_envelope_check(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c_tilde = load_field(cfg);
    InitialData init = InitialData::parse(cfg.str_or("init", "step"));
    int64_t n = cfg.int_or("n", 30);
    auto win = cfg.num_list("window");
    require(win.size() == 2 && win[0] < win[1], errc::invalid_argument, "window must be a,b");
    int64_t lo = static_cast<int64_t>(std::llround(win[0]));
    int64_t hi = static_cast<int64_t>(std::llround(win[1]));
    double T = cfg.num("t"); // event-time horizon of the clock field
    int seeds = static_cast<int>(cfg.int_or("replicas", 10));
    uint64_t seed = cfg.uint_or("seed", 1);
    bool decouple = cfg.int_or("decouple", 0) != 0;

    json rep;
    int total_checked = 0, total_viol = 0, total_inc = 0;
    std::vector<json> per_seed(seeds);
    parallel_for(seeds, [&](size_t s) {
        uint64_t rs = rng::replica_seed(seed, s);
        std::vector<double> times;
        for (int k = 1; k <= 8; ++k) times.push_back(T * k / 8.0);
        auto r = check_envelope(c_tilde, init, n, lo, hi, T, times, rs, {}, decouple);
        per_seed[s] = {{"seed", rs},
                       {"checked", r.checked},
                       {"violations", r.violations},
                       {"inconclusive", r.inconclusive}};
    }, static_cast<int>(cfg.int_or("threads", 0)));
    for (auto& js : per_seed) {
        total_checked += js["checked"].get<int>();
        total_viol += js["violations"].get<int>();
        total_inc += js["inconclusive"].get<int>();
    }
    ctx.stage("envelope");
    bool pass = decouple ? total_viol > 0 : (total_viol == 0 && total_checked > 0);
    rep["mode"] = decouple ? "negative_control" : "coupled";
    rep["checked"] = total_checked;
    rep["violations"] = total_viol;
    rep["inconclusive"] = total_inc;
    rep["per_seed"] = per_seed;
    rep["pass"] = pass;
    write_file_atomic(ctx.path("envelope_check.json"), rep.dump(2) + "\n");
    ctx.note_output(ctx.path("envelope_check.json"));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "envelope: %d checked, %d violations, %d inconclusive",
                  total_checked, total_viol, total_inc);
    return ctx.finish(pass, buf);
}

RunResult run_pde_check(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    std::string mode = cfg.str("mode");
    FieldPtr c_tilde = load_field(cfg);
    InitialData init = InitialData::parse(cfg.str_or("init", "step"));
    double t = cfg.num_or("t", 1.0);
    json rep;
    rep["mode"] = mode;
    bool pass = false;

    if (mode == "residual") {
        HydroOptions hopt;
        hopt.grid_h = cfg.num_or("h", 1.0 / 64);
        HydroSolver solver(c_tilde, init, t + 0.2, hopt);
        auto xr = cfg.has("xrange") ? cfg.num_list("xrange") : std::vector<double>{-0.8, 0.8};
        int64_t k = cfg.int_or("samples", 100);
        std::vector<std::pair<double, double>> pts;
        for (double x : linspace(xr[0], xr[1], k)) pts.emplace_back(x, t);
        auto r = hj_residual(solver, pts);
        double med_tol = cfg.num_or("residual_tol", 0.02);
        double exc_tol = cfg.num_or("excluded_tol", 0.05);
        pass = r.median_abs <= med_tol && r.excluded_fraction <= exc_tol;
        rep["median_abs"] = r.median_abs;
        rep["excluded_fraction"] = r.excluded_fraction;
        rep["included"] = r.included;
    } else if (mode == "viscosity") {
        HydroOptions hopt;
        hopt.grid_h = cfg.num_or("h", 1.0 / 64);
        HydroSolver solver(c_tilde, init, t + 0.2, hopt);
        auto xr = cfg.has("xrange") ? cfg.num_list("xrange") : std::vector<double>{-0.8, 0.8};
        int64_t k = cfg.int_or("samples", 25);
        std::vector<std::pair<double, double>> pts;
        for (double x : linspace(xr[0], xr[1], k)) pts.emplace_back(x, t);
        auto r = viscosity_spot_check(solver, pts);
        pass = r.ok();
        rep["points"] = r.points;
        rep["touching_above"] = r.touching_above;
        rep["touching_below"] = r.touching_below;
        rep["sub_violations"] = r.sub_violations;
        rep["super_violations"] = r.super_violations;
        rep["inconclusive"] = r.inconclusive;
    } else if (mode == "weak") {
        double dx = cfg.num_or("dx", 1.0 / 400);
        auto xr = cfg.has("xrange") ? cfg.num_list("xrange") : std::vector<double>{-2.0, 2.0};
        GodunovOptions gopt;
        gopt.record_all_steps = true;
        auto run = godunov_run(c_tilde, init, xr[0], xr[1], t, dx, {}, gopt);
        TestBump phi{cfg.num_or("phi_x0", 0.0), cfg.num_or("phi_wx", 1.0),
                     cfg.num_or("phi_t0", 0.6 * t), cfg.num_or("phi_wt", 0.5 * t)};
        double defect = weak_form_defect(run, init, phi);
        double tol = cfg.num_or("defect_tol", 0.01);
        pass = std::fabs(defect) <= tol;
        rep["defect"] = defect;
    } else if (mode == "maxcurrent") {
        double dx = cfg.num_or("dx", 1.0 / 400);
        auto xr = cfg.has("xrange") ? cfg.num_list("xrange") : std::vector<double>{-2.0, 2.0};
        auto run = godunov_run(c_tilde, init, xr[0], xr[1], t, dx, {t});
        HydroOptions hopt;
        hopt.grid_h = cfg.num_or("h", 1.0 / 48);
        HydroSolver solver(c_tilde, init, t + 1e-6, hopt);
        auto xs = linspace(xr[0] * 0.75, xr[1] * 0.75, cfg.int_or("samples", 41));
        double tol = cfg.num_or("tol", 0.02);
        auto cmp = maximal_current_check(run, solver, xs, t, 17, tol);
        pass = cmp.ok(tol);
        rep["max_excess"] = cmp.max_excess;
        rep["near_equal"] = cmp.near_equal;
        rep["samples"] = cmp.x.size();
    } else {
        fail(errc::parse_error, "pde_check: unknown mode '" + mode + "'");
    }
    ctx.stage(mode);
    rep["pass"] = pass;
    write_file_atomic(ctx.path("pde_check.json"), rep.dump(2) + "\n");
    ctx.note_output(ctx.path("pde_check.json"));
    return ctx.finish(pass, "pde_check[" + mode + "]: " + (pass ? "pass" : "FAIL"));
}

RunResult run_compare(RunContext& ctx) {
    const Config& cfg = ctx.cfg;
    FieldPtr c_tilde = load_field(cfg);
    InitialData init = InitialData::parse(cfg.str_or("init", "step"));
    double t = cfg.num("t");
    auto ns = cfg.int_list("n");
    for (int64_t n : ns) require(n >= 1, errc::invalid_argument, "n entries must be positive");
    int replicas = static_cast<int>(cfg.int_or("replicas", 8));
    uint64_t seed = cfg.uint_or("seed", 1);
    auto xr = cfg.has("xrange") ? cfg.num_list("xrange") : std::vector<double>{-1.5, 1.5};
    int64_t bins = cfg.int_or("samples", 31);
    bool trend_only = cfg.int_or("trend_only", 0) != 0;
    double bound = cfg.num_or("bound", 0.05);

    HydroOptions hopt;
    hopt.grid_h = cfg.num_or("h", 1.0 / 48);
    HydroSolver solver(c_tilde, init, t + 1e-6, hopt);
    auto xs = linspace(xr[0], xr[1], bins);
    Profile prof = solver.profile(xs, t);
    ctx.stage("hydro_reference");

    CsvWriter csv(ctx.path("compare.csv"), {"n", "x", "mean_height", "v", "dev"});
    std::vector<double> dev_l1(ns.size(), 0.0);
    for (size_t a = 0; a < ns.size(); ++a) {
        int64_t n = ns[a];
        int64_t lo = static_cast<int64_t>(std::floor(xr[0] * n)) - 2;
        int64_t hi = static_cast<int64_t>(std::ceil(xr[1] * n)) + 2;
        std::vector<double> mean_h(xs.size(), 0.0);
        std::vector<int> valid(replicas, 1);
        std::vector<std::vector<double>> acc(replicas, std::vector<double>(xs.size(), 0.0));
        parallel_for(replicas, [&](size_t r) {
            auto traj = evolve_heights(c_tilde, init, n, lo, hi, n * t,
                                       rng::replica_seed(seed, 1000 * a + r));
            valid[r] = traj.valid ? 1 : 0;
            auto h = traj.heights_at(n * t);
            for (size_t i = 0; i < xs.size(); ++i) {
                int64_t site = static_cast<int64_t>(std::floor(xs[i] * n));
                acc[r][i] = static_cast<double>(h[site - lo]) / n;
            }
        }, static_cast<int>(cfg.int_or("threads", 0)));
        for (int r = 0; r < replicas; ++r) {
            require(valid[r] == 1, errc::run_invalid, "tasep run touched its boundary");
            for (size_t i = 0; i < xs.size(); ++i) mean_h[i] += acc[r][i] / replicas;
        }
        for (size_t i = 0; i < xs.size(); ++i) {
            double d = std::fabs(mean_h[i] - prof.v[i]);
            dev_l1[a] += d / xs.size();
            csv.row({static_cast<double>(n), xs[i], mean_h[i], prof.v[i], d});
        }
        ctx.stage("tasep_n" + std::to_string(n));
    }
    csv.close();
    ctx.note_output(ctx.path("compare.csv"));

    bool decreasing = true;
    for (size_t a = 1; a < dev_l1.size(); ++a)
        decreasing = decreasing && dev_l1[a] <= dev_l1[a - 1] + 1e-12;
    bool pass = decreasing && (trend_only || dev_l1.back() <= bound);
    json rep;
    rep["dev_l1"] = dev_l1;
    rep["decreasing"] = decreasing;
    rep["final_bound"] = bound;
    rep["trend_only"] = trend_only;
    rep["pass"] = pass;
    write_file_atomic(ctx.path("compare.json"), rep.dump(2) + "\n");
    ctx.note_output(ctx.path("compare.json"));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "compare: final L1 dev %.4f (%s)", dev_l1.back(),
                  pass ? "pass" : "FAIL");
    return ctx.finish(pass, buf);
}

} // namespace

RunResult run_experiment(const Config& cfg) {
    std::string exp = cfg.str("experiment");
    RunContext ctx(cfg);
    if (exp == "lpp_lln") return run_lpp_lln(ctx);
    if (exp == "shape") return run_shape(ctx);
    if (exp == "level_curve") return run_level_curve(ctx);
    if (exp == "tasep") return run_tasep(ctx);
    if (exp == "hydro") return run_hydro(ctx);
    if (exp == "godunov") return run_godunov(ctx);
    if (exp == "envelope_check") return run_envelope_check(ctx);
    if (exp == "pde_check") return run_pde_check(ctx);
    if (exp == "compare") return run_compare(ctx);
    fail(errc::parse_error, "unknown experiment '" + exp + "'");
}

} // namespace th
