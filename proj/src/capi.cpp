#include "tasephydro.h"

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/run.hpp"
#include "core/shape.hpp"
#include "core/speed_field.hpp"

namespace {

thread_local std::string g_last_error;

th_status translate(const th::error& e) {
    g_last_error = e.what();
    switch (e.code()) {
        case th::errc::invalid_argument: return TH_EINVAL;
        case th::errc::parse_error: return TH_EPARSE;
        case th::errc::mem_budget: return TH_EMEM;
        case th::errc::run_invalid: return TH_ERUN;
        case th::errc::io_error: return TH_EIO;
    }
    return TH_EUNKNOWN;
}

template <typename Fn>
th_status guarded(Fn&& fn) {
    try {
        fn();
        return TH_OK;
    } catch (const th::error& e) {
        return translate(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TH_EUNKNOWN;
    } catch (...) {
        g_last_error = "unknown error";
        return TH_EUNKNOWN;
    }
}

} // namespace

struct th_field {
    th::FieldPtr field;
};

struct th_run {
    th::RunResult result;
};

extern "C" {

const char* th_last_error(void) { return g_last_error.c_str(); }
const char* th_version(void) { return th::kVersion; }

th_status th_field_parse(const char* text, th_field** out) {
    if (!text || !out) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] { *out = new th_field{th::parse_speed_field(text)}; });
}

th_status th_field_open(const char* path, th_field** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] { *out = new th_field{th::load_speed_field(path)}; });
}

void th_field_free(th_field* f) { delete f; }

double th_field_eval(const th_field* f, double x, double y) {
    if (!f) return std::nan("");
    return f->field->value(x, y);
}

th_status th_field_envelopes(const th_field* f, double x, double y, double* lo, double* hi) {
    if (!f || !lo || !hi) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] {
        auto [l, h] = f->field->envelopes({x, y});
        *lo = l;
        *hi = h;
    });
}

th_status th_field_bounds(const th_field* f, double x0, double y0, double x1, double y1,
                          double* lo, double* hi) {
    if (!f || !lo || !hi) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] {
        auto [l, h] = f->field->bounds_on(th::Rect{x0, y0, x1, y1});
        *lo = l;
        *hi = h;
    });
}

th_status th_field_shear(const th_field* f, th_field** out) {
    if (!f || !out) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] { *out = new th_field{th::shear(f->field)}; });
}

th_status th_field_unshear(const th_field* f, th_field** out) {
    if (!f || !out) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] { *out = new th_field{th::unshear(f->field)}; });
}

double th_gamma_shape(double x, double y) {
    try {
        return th::gamma_shape(x, y);
    } catch (...) {
        return std::nan("");
    }
}

double th_psi(double y) { return th::psi_dual(y); }

th_status th_run_experiment(const char* cfg_text, th_run** out) {
    if (!cfg_text || !out) {
        g_last_error = "null argument";
        return TH_EINVAL;
    }
    return guarded([&] {
        th::Config cfg = th::Config::parse(cfg_text);
        *out = new th_run{th::run_experiment(cfg)};
    });
}

int th_run_passed(const th_run* r) { return r && r->result.passed ? 1 : 0; }

const char* th_run_manifest(const th_run* r) {
    return r ? r->result.manifest_json.c_str() : "";
}

const char* th_run_summary(const th_run* r) { return r ? r->result.summary.c_str() : ""; }

void th_run_free(th_run* r) { delete r; }

} // extern "C"
