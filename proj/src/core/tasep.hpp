#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "environment.hpp"
#include "init_data.hpp"
#include "speed_field.hpp"

namespace th {

struct TasepOptions {
    double kappa = 4.0;         // buffer columns per unit of r_high * horizon
    int64_t min_pad = 8;
    size_t max_events = 1u << 28;
};

// Height process z on a padded window. Heights decrease by 1 per particle
// jump; occupations are eta_{i-1} = z_i - z_{i-1}. The outermost columns are
// frozen; the influence of that approximation is tracked as a light cone
// (any ring heard next to a corrupted column extends the corruption inward),
// and `valid` certifies the cone never touched the reported window.
struct HeightTrajectory {
    int64_t n = 1;
    int64_t lo = 0, hi = 0;        // reported window
    int64_t pad = 0;               // buffer columns on each side
    std::vector<int64_t> z0;       // heights on [lo-pad, hi+pad] at time 0
    std::vector<int64_t> z;        // heights at `time`
    double time = 0.0;
    std::vector<std::pair<double, int64_t>> events; // (micro time, column), time-ordered
    int64_t bad_left = 0, bad_right = 0; // corruption fronts at the horizon
    bool valid = true;

    int64_t col_lo() const { return lo - pad; }
    int64_t col_hi() const { return hi + pad; }
    int64_t z_at(int64_t col) const { return z[static_cast<size_t>(col - col_lo())]; }
    int64_t z0_at(int64_t col) const { return z0[static_cast<size_t>(col - col_lo())]; }
    // heights on [lo,hi] at an earlier time, reconstructed from the event log
    std::vector<int64_t> heights_at(double t) const;
    std::vector<int> occupations_at(double t) const; // eta_i for i in [lo, hi-1]
};

using HeightFn = std::function<int64_t(int64_t)>; // initial height per column

// z_i(0) from the initial occupation rule; z_0(0) = round(n * v00).
std::vector<int64_t> initial_heights(const InitialData& init, int64_t n, int64_t col_lo,
                                     int64_t col_hi, uint64_t seed, double v00 = 0.0);

// Event-driven evolution on [lo-pad, hi+pad] up to micro time T. If `clocks`
// is null a memoryless per-column stream is used (fast mode); passing a
// shared ClockField gives the pathwise coupling used by the envelope checks.
// `z0_fn`, when set, overrides the initial heights (evaluated on the padded
// window).
HeightTrajectory evolve_heights(const FieldPtr& c_tilde, const InitialData& init, int64_t n,
                                int64_t lo, int64_t hi, double micro_T, uint64_t seed,
                                const TasepOptions& opt = {}, ClockField* clocks = nullptr,
                                const HeightFn& z0_fn = {});

// Auxiliary step-initial process xi^{n,k} on a relative window, driven by the
// same clock field under the index shift (m+k, xi_m - z_k(0)).
struct AuxProcess {
    int64_t k = 0;
    int64_t zk0 = 0;
    int64_t m_lo = 0, m_hi = 0;
    std::vector<int64_t> xi;                          // values at the horizon
    std::vector<std::vector<double>> jump_times;      // per m, sorted
    int64_t bad_left = 0, bad_right = 0;              // corruption fronts

    int64_t initial(int64_t m) const { return m < 0 ? -m : 0; }
    bool clean_at(int64_t m) const { return m > bad_left && m < bad_right; }
    int64_t xi_at(int64_t m, double t) const;
    // first time xi_m >= level, +inf if not reached by the horizon
    double reach_time(int64_t m, int64_t level) const;
};

// Null `clocks` uses memoryless per-column draws keyed by (seed, n, c_tilde):
// right in law, cheap at large scale, but without the pathwise coupling.
AuxProcess evolve_aux(const FieldPtr& c_tilde, int64_t n, uint64_t seed, int64_t k, int64_t zk0,
                      int64_t m_lo, int64_t m_hi, double micro_T, const TasepOptions& opt = {},
                      ClockField* clocks = nullptr);

// Exact envelope identity z_i(t) = max_k { z_k(0) - xi^k_{i-k}(t) }, checked
// as an integer identity with sentinel-certified truncation on both sides.
struct EnvelopeReport {
    int checked = 0;
    int violations = 0;
    int inconclusive = 0;
    std::vector<std::string> details;
    bool ok() const { return violations == 0 && inconclusive == 0 && checked > 0; }
};

EnvelopeReport check_envelope(const FieldPtr& c_tilde, const InitialData& init, int64_t n,
                              int64_t lo, int64_t hi, double micro_T,
                              const std::vector<double>& check_times, uint64_t seed,
                              const TasepOptions& opt = {}, bool decouple_clocks = false,
                              int64_t truncation_extra = 0);

} // namespace th
