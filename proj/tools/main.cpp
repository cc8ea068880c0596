// tasep-hydro: command-line harness over the tasephydro C API.
//
// Subcommands mirror the experiments: lpp-lln, shape-grid, level-curve,
// tasep-sim, hydro, godunov, pde-check, envelope-check, compare, run.
// Exit codes: 0 pass, 1 assertion failure, 2 configuration/parse error,
// 3 runtime error.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tasephydro.h"

namespace {

struct KvBuilder {
    std::string text;
    void set(const std::string& k, const std::string& v) {
        if (!v.empty()) text += k + " = " + v + "\n";
    }
    void set_num(const std::string& k, double v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        set(k, buf);
    }
    void set_int(const std::string& k, long long v) { set(k, std::to_string(v)); }
};

int execute(const std::string& cfg_text) {
    th_run* run = nullptr;
    th_status st = th_run_experiment(cfg_text.c_str(), &run);
    if (st != TH_OK) {
        std::fprintf(stderr, "error: %s\n", th_last_error());
        return (st == TH_EPARSE || st == TH_EINVAL || st == TH_EIO) ? 2 : 3;
    }
    std::printf("%s\n", th_run_summary(run));
    int rc = th_run_passed(run) ? 0 : 1;
    th_run_free(run);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inhomogeneous TASEP / LPP hydrodynamics harness"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help"); // frees -h / --h for grid spacing

    // shared options
    std::string speed, init = "step", out = "out", xrange, window, nlist, record;
    unsigned long long seed = 1;
    long long replicas = -1, samples = -1, threads = 0, nscale = -1, mem_cap = -1;
    double t = -1.0, h = -1.0, dx = -1.0, q = 0.0, v0q = 0.0;
    double x = 0.0, y = 0.0, a = 0.0, b = 0.0, w = 0.0, hext = 0.0;
    std::string mode, cfg_path;
    bool decouple = false, trend_only = false;

    auto add_common = [&](CLI::App* sub, bool needs_speed = true) {
        sub->set_help_flag("--help", "print help");
        if (needs_speed)
            sub->add_option("--speed", speed, "speed field description file")->required();
        sub->add_option("--seed", seed, "base RNG seed");
        sub->add_option("--threads", threads, "worker threads (0 = hardware)");
        sub->add_option("--out-dir,--out", out, "output directory");
        sub->add_option("--mem-cap-mb", mem_cap, "passage-grid memory budget");
    };

    auto* lln = app.add_subcommand("lpp-lln", "last-passage LLN estimates G/n");
    add_common(lln);
    lln->add_option("--x", x, "target x")->required();
    lln->add_option("--y", y, "target y")->required();
    lln->add_option("--a", a, "start x (macroscopic)");
    lln->add_option("--b", b, "start y (macroscopic)");
    lln->add_option("--n", nlist, "comma-separated scale list")->required();
    lln->add_option("--replicas", replicas, "independent replicas");

    auto* shp = app.add_subcommand("shape-grid", "macroscopic shape function grid");
    add_common(shp);
    shp->add_option("--start", xrange, "start a,b");
    shp->add_option("--extent", window, "extent w,h")->required();
    shp->add_option("--h", h, "grid spacing");

    auto* lc = app.add_subcommand("level-curve", "level curve g^q(x,t)");
    add_common(lc);
    lc->add_option("--q", q, "anchor");
    lc->add_option("--v0q", v0q, "v0(q)");
    lc->add_option("--t", t, "level")->required();
    lc->add_option("--xrange", xrange, "displacement range a,b")->required();
    lc->add_option("--samples", samples, "sample count");
    lc->add_option("--h", h, "grid spacing");

    auto* ts = app.add_subcommand("tasep-sim", "height-process simulation");
    add_common(ts);
    ts->add_option("--init", init, "step|rstep|riemann:a,b|bernoulli:p|file:PATH");
    ts->add_option("--n", nscale, "scale")->required();
    ts->add_option("--t", t, "macroscopic horizon")->required();
    ts->add_option("--window", window, "macroscopic window a,b")->required();
    ts->add_option("--replicas", replicas, "replicas");
    ts->add_option("--record", record, "comma-separated record times");

    auto* hy = app.add_subcommand("hydro", "hydrodynamic profile v, rho");
    add_common(hy);
    hy->add_option("--init", init, "initial density");
    hy->add_option("--t", t, "time")->required();
    hy->add_option("--xrange", xrange, "sample range a,b")->required();
    hy->add_option("--samples", samples, "sample count");
    hy->add_option("--h", h, "shape grid spacing");

    auto* gd = app.add_subcommand("godunov", "supply-demand finite volume run");
    add_common(gd);
    gd->add_option("--init", init, "initial density");
    gd->add_option("--t", t, "horizon")->required();
    gd->add_option("--dx", dx, "cell width");
    gd->add_option("--xrange", xrange, "domain a,b")->required();

    auto* pc = app.add_subcommand("pde-check", "PDE verification suites");
    add_common(pc);
    pc->add_option("--mode", mode, "residual|viscosity|weak|maxcurrent")->required();
    pc->add_option("--init", init, "initial density");
    pc->add_option("--t", t, "time");
    pc->add_option("--xrange", xrange, "range a,b");
    pc->add_option("--samples", samples, "sample count");
    pc->add_option("--dx", dx, "cell width");
    pc->add_option("--h", h, "shape grid spacing");

    auto* ec = app.add_subcommand("envelope-check", "exact envelope identity check");
    add_common(ec);
    ec->add_option("--init", init, "initial density");
    ec->add_option("--n", nscale, "scale")->required();
    ec->add_option("--t", t, "event-time horizon")->required();
    ec->add_option("--window", window, "site window a,b")->required();
    ec->add_option("--replicas", replicas, "seeds");
    ec->add_flag("--decouple", decouple, "negative control: decoupled clocks");

    auto* cp = app.add_subcommand("compare", "microscopic vs macroscopic cross-check");
    add_common(cp);
    cp->add_option("--init", init, "initial density");
    cp->add_option("--n", nlist, "comma-separated scale list")->required();
    cp->add_option("--t", t, "time")->required();
    cp->add_option("--xrange", xrange, "sample range a,b");
    cp->add_option("--samples", samples, "bins");
    cp->add_option("--replicas", replicas, "replicas per scale");
    cp->add_flag("--trend-only", trend_only, "pass on decreasing deviations alone");

    auto* rn = app.add_subcommand("run", "run an experiment from a config file");
    rn->set_help_flag("--help", "print help");
    rn->add_option("config", cfg_path, "config file (key=value)")->required();
    rn->add_option("--out-dir", out, "output directory override");

    CLI11_PARSE(app, argc, argv);

    KvBuilder kv;
    kv.set("out", out);
    kv.set_int("threads", threads);
    if (seed != 1) kv.set("seed", std::to_string(seed));
    if (mem_cap > 0) kv.set_int("mem_cap_mb", mem_cap);
    if (!speed.empty()) kv.set("speed", speed);

    if (rn->parsed()) {
        std::ifstream in(cfg_path);
        if (!in.good()) {
            std::fprintf(stderr, "error: cannot open config %s\n", cfg_path.c_str());
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        text += "\nout = " + out + "\n";
        return execute(text);
    }

    if (lln->parsed()) {
        kv.set("experiment", "lpp_lln");
        kv.set_num("x", x);
        kv.set_num("y", y);
        kv.set_num("a", a);
        kv.set_num("b", b);
        kv.set("n", nlist);
        if (replicas > 0) kv.set_int("replicas", replicas);
    } else if (shp->parsed()) {
        kv.set("experiment", "shape");
        if (!xrange.empty()) {
            auto comma = xrange.find(',');
            kv.set("a", xrange.substr(0, comma));
            kv.set("b", comma == std::string::npos ? "0" : xrange.substr(comma + 1));
        }
        auto comma = window.find(',');
        if (comma == std::string::npos) {
            std::fprintf(stderr, "error: --extent expects w,h\n");
            return 2;
        }
        kv.set("w", window.substr(0, comma));
        kv.set("hext", window.substr(comma + 1));
        if (h > 0) kv.set_num("h", h);
    } else if (lc->parsed()) {
        kv.set("experiment", "level_curve");
        kv.set_num("q", q);
        kv.set_num("v0q", v0q);
        kv.set_num("t", t);
        kv.set("xrange", xrange);
        if (samples > 0) kv.set_int("samples", samples);
        if (h > 0) kv.set_num("h", h);
    } else if (ts->parsed()) {
        kv.set("experiment", "tasep");
        kv.set("init", init);
        kv.set_int("n", nscale);
        kv.set_num("t", t);
        kv.set("window", window);
        if (replicas > 0) kv.set_int("replicas", replicas);
        kv.set("record", record);
    } else if (hy->parsed()) {
        kv.set("experiment", "hydro");
        kv.set("init", init);
        kv.set_num("t", t);
        kv.set("xrange", xrange);
        if (samples > 0) kv.set_int("samples", samples);
        if (h > 0) kv.set_num("h", h);
    } else if (gd->parsed()) {
        kv.set("experiment", "godunov");
        kv.set("init", init);
        kv.set_num("t", t);
        kv.set("xrange", xrange);
        if (dx > 0) kv.set_num("dx", dx);
    } else if (pc->parsed()) {
        kv.set("experiment", "pde_check");
        kv.set("mode", mode);
        kv.set("init", init);
        if (t > 0) kv.set_num("t", t);
        kv.set("xrange", xrange);
        if (samples > 0) kv.set_int("samples", samples);
        if (dx > 0) kv.set_num("dx", dx);
        if (h > 0) kv.set_num("h", h);
    } else if (ec->parsed()) {
        kv.set("experiment", "envelope_check");
        kv.set("init", init);
        kv.set_int("n", nscale);
        kv.set_num("t", t);
        kv.set("window", window);
        if (replicas > 0) kv.set_int("replicas", replicas);
        if (decouple) kv.set("decouple", "1");
    } else if (cp->parsed()) {
        kv.set("experiment", "compare");
        kv.set("init", init);
        kv.set("n", nlist);
        kv.set_num("t", t);
        kv.set("xrange", xrange);
        if (samples > 0) kv.set_int("samples", samples);
        if (replicas > 0) kv.set_int("replicas", replicas);
        if (trend_only) kv.set("trend_only", "1");
    }
    return execute(kv.text);
}
