#include "tasep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "error.hpp"
#include "rng.hpp"

namespace th {

namespace {
constexpr double pinf = std::numeric_limits<double>::infinity();

int64_t buffer_columns(const FieldPtr& c_tilde, int64_t lo, int64_t hi, int64_t n,
                       double micro_T, const TasepOptions& opt) {
    double span = std::max(std::fabs(static_cast<double>(lo)), std::fabs(static_cast<double>(hi)));
    double reach = (span + 4.0 * micro_T + 16.0) / n + 2.0;
    Rect box{-reach, -reach, reach, reach};
    double r_high = c_tilde->bounds_on(box).second;
    return static_cast<int64_t>(std::ceil(opt.kappa * r_high * micro_T)) + opt.min_pad;
}
} // namespace

std::vector<int64_t> initial_heights(const InitialData& init, int64_t n, int64_t col_lo,
                                     int64_t col_hi, uint64_t seed, double v00) {
    // z_i - z_{i-1} = eta_{i-1}; anchor z_0 = round(n * v00)
    std::vector<int64_t> z(static_cast<size_t>(col_hi - col_lo + 1));
    int64_t anchor = std::llround(n * v00);
    auto eta = [&](int64_t site) { return init.occupation(site, n, seed); };
    if (col_lo <= 0 && 0 <= col_hi) {
        z[static_cast<size_t>(-col_lo)] = anchor;
        for (int64_t i = 1; i <= col_hi; ++i)
            z[static_cast<size_t>(i - col_lo)] = z[static_cast<size_t>(i - 1 - col_lo)] + eta(i - 1);
        for (int64_t i = -1; i >= col_lo; --i)
            z[static_cast<size_t>(i - col_lo)] = z[static_cast<size_t>(i + 1 - col_lo)] - eta(i);
    } else {
        int64_t zc = anchor;
        if (col_lo > 0) {
            for (int64_t i = 1; i <= col_hi; ++i) {
                zc += eta(i - 1);
                if (i >= col_lo) z[static_cast<size_t>(i - col_lo)] = zc;
            }
        } else {
            for (int64_t i = -1; i >= col_lo; --i) {
                zc -= eta(i);
                if (i <= col_hi) z[static_cast<size_t>(i - col_lo)] = zc;
            }
        }
    }
    return z;
}

std::vector<int64_t> HeightTrajectory::heights_at(double t) const {
    std::vector<int64_t> out(z0.begin() + static_cast<size_t>(lo - col_lo()),
                             z0.begin() + static_cast<size_t>(hi - col_lo()) + 1);
    for (const auto& [et, col] : events) {
        if (et > t) break;
        if (col >= lo && col <= hi) out[static_cast<size_t>(col - lo)] -= 1;
    }
    return out;
}

std::vector<int> HeightTrajectory::occupations_at(double t) const {
    auto h = heights_at(t);
    std::vector<int> eta(h.size() - 1);
    for (size_t i = 0; i + 1 < h.size(); ++i) eta[i] = static_cast<int>(h[i + 1] - h[i]);
    return eta;
}

HeightTrajectory evolve_heights(const FieldPtr& c_tilde, const InitialData& init, int64_t n,
                                int64_t lo, int64_t hi, double micro_T, uint64_t seed,
                                const TasepOptions& opt, ClockField* clocks,
                                const HeightFn& z0_fn) {
    require(n >= 1 && hi >= lo && micro_T >= 0.0, errc::invalid_argument,
            "evolve_heights: bad window or horizon");
    HeightTrajectory traj;
    traj.n = n;
    traj.lo = lo;
    traj.hi = hi;
    traj.pad = buffer_columns(c_tilde, lo, hi, n, micro_T, opt);
    const int64_t clo = traj.col_lo(), chi = traj.col_hi();
    if (z0_fn) {
        traj.z0.resize(static_cast<size_t>(chi - clo + 1));
        for (int64_t col = clo; col <= chi; ++col)
            traj.z0[static_cast<size_t>(col - clo)] = z0_fn(col);
        for (size_t i = 1; i < traj.z0.size(); ++i) {
            int64_t d = traj.z0[i] - traj.z0[i - 1];
            require(d == 0 || d == 1, errc::invalid_argument,
                    "initial heights must have increments in {0,1}");
        }
    } else {
        traj.z0 = initial_heights(init, n, clo, chi, seed);
    }
    traj.z = traj.z0;
    traj.time = micro_T;

    auto rate = [&](int64_t col, int64_t row) {
        return c_tilde->value(static_cast<double>(col) / n, static_cast<double>(row) / n);
    };
    auto zv = [&](int64_t col) -> int64_t& { return traj.z[static_cast<size_t>(col - clo)]; };

    // next candidate ring per column; fast mode draws a fresh exponential at
    // each (re)arm, exact mode reads the shared prefix rings
    std::vector<uint64_t> draws(static_cast<size_t>(chi - clo + 1), 0);
    auto arm = [&](int64_t col, double from) -> double {
        int64_t row = -zv(col);
        if (clocks) return clocks->first_ring_after(col, row, from);
        uint64_t k = draws[static_cast<size_t>(col - clo)]++;
        return from +
               rng::exponential(rng::key(seed, rng::stream_clock_fast, col, 0, k), rate(col, row));
    };

    using Ev = std::pair<double, int64_t>;
    std::priority_queue<Ev, std::vector<Ev>, std::greater<>> queue;
    for (int64_t col = clo + 1; col < chi; ++col) {
        double t = arm(col, 0.0);
        if (t <= micro_T) queue.push({t, col});
    }
    // frozen-boundary light cone: a ring heard next to a corrupted column
    // extends the corruption inward by one
    int64_t bad_left = clo, bad_right = chi;
    size_t n_events = 0;
    while (!queue.empty()) {
        auto [t, col] = queue.top();
        queue.pop();
        if (t > micro_T) break;
        if (col == bad_left + 1) ++bad_left;
        if (col == bad_right - 1) --bad_right;
        bool free_to_move = zv(col) - zv(col - 1) == 1 && zv(col + 1) == zv(col);
        if (free_to_move) {
            zv(col) -= 1;
            traj.events.emplace_back(t, col);
            require(++n_events <= opt.max_events, errc::mem_budget, "event budget exceeded");
        }
        double nt = arm(col, t);
        if (nt <= micro_T) queue.push({nt, col});
    }
    traj.bad_left = bad_left;
    traj.bad_right = bad_right;
    traj.valid = bad_left < lo && bad_right > hi;
    return traj;
}

int64_t AuxProcess::xi_at(int64_t m, double t) const {
    if (m < m_lo || m > m_hi) return -1; // caller guards
    const auto& times = jump_times[static_cast<size_t>(m - m_lo)];
    auto it = std::upper_bound(times.begin(), times.end(), t);
    return initial(m) + (it - times.begin());
}

double AuxProcess::reach_time(int64_t m, int64_t level) const {
    if (level <= initial(m)) return 0.0;
    const auto& times = jump_times[static_cast<size_t>(m - m_lo)];
    int64_t need = level - initial(m);
    if (static_cast<int64_t>(times.size()) < need) return pinf;
    return times[static_cast<size_t>(need - 1)];
}

AuxProcess evolve_aux(const FieldPtr& c_tilde, int64_t n, uint64_t seed, int64_t k, int64_t zk0,
                      int64_t m_lo, int64_t m_hi, double micro_T, const TasepOptions& opt,
                      ClockField* clocks) {
    require(m_hi >= m_lo, errc::invalid_argument, "evolve_aux: bad window");
    AuxProcess aux;
    aux.k = k;
    aux.zk0 = zk0;
    aux.m_lo = m_lo;
    aux.m_hi = m_hi;
    aux.xi.resize(static_cast<size_t>(m_hi - m_lo + 1));
    aux.jump_times.resize(aux.xi.size());
    for (int64_t m = m_lo; m <= m_hi; ++m)
        aux.xi[static_cast<size_t>(m - m_lo)] = aux.initial(m);

    auto xv = [&](int64_t m) -> int64_t& { return aux.xi[static_cast<size_t>(m - m_lo)]; };
    std::vector<uint64_t> draws(aux.xi.size(), 0);
    auto arm = [&](int64_t m, double from) {
        if (clocks) return clocks->first_ring_after(m + k, xv(m) - zk0, from);
        double rate = c_tilde->value(static_cast<double>(m + k) / n,
                                     static_cast<double>(xv(m) - zk0) / n);
        uint64_t d = draws[static_cast<size_t>(m - m_lo)]++;
        return from +
               rng::exponential(rng::key(seed, rng::stream_clock_fast, m + k, 1, d), rate);
    };
    using Ev = std::pair<double, int64_t>;
    std::priority_queue<Ev, std::vector<Ev>, std::greater<>> queue;
    for (int64_t m = m_lo + 1; m < m_hi; ++m) {
        double t = arm(m, 0.0);
        if (t <= micro_T) queue.push({t, m});
    }
    int64_t bad_left = m_lo, bad_right = m_hi;
    size_t n_events = 0;
    while (!queue.empty()) {
        auto [t, m] = queue.top();
        queue.pop();
        if (t > micro_T) break;
        if (m == bad_left + 1) ++bad_left;
        if (m == bad_right - 1) --bad_right;
        // xi_m may rise to xi_m + 1 if it stays <= xi_{m-1} and <= xi_{m+1} + 1
        bool allowed = xv(m) + 1 <= xv(m - 1) && xv(m) + 1 <= xv(m + 1) + 1;
        if (allowed) {
            xv(m) += 1;
            aux.jump_times[static_cast<size_t>(m - m_lo)].push_back(t);
            require(++n_events <= opt.max_events, errc::mem_budget, "event budget exceeded");
        }
        double nt = arm(m, t);
        if (nt <= micro_T) queue.push({nt, m});
    }
    aux.bad_left = bad_left;
    aux.bad_right = bad_right;
    return aux;
}

EnvelopeReport check_envelope(const FieldPtr& c_tilde, const InitialData& init, int64_t n,
                              int64_t lo, int64_t hi, double micro_T,
                              const std::vector<double>& check_times, uint64_t seed,
                              const TasepOptions& opt, bool decouple_clocks,
                              int64_t truncation_extra) {
    ClockField clocks(c_tilde, n, seed, micro_T * 1.0000001);
    ClockField aux_clocks(c_tilde, n, decouple_clocks ? rng::mix(seed ^ 0xdecull) : seed,
                          micro_T * 1.0000001);

    HeightTrajectory traj = evolve_heights(c_tilde, init, n, lo, hi, micro_T, seed, opt, &clocks);

    EnvelopeReport rep;
    if (!traj.valid) {
        rep.inconclusive++;
        rep.details.push_back("height process light cone reached the reported window");
        return rep;
    }

    // anchors wide enough that untouched sentinels exist on both sides
    const int64_t pad = traj.pad;
    const int64_t a_lo = lo - 2 * pad - truncation_extra, a_hi = hi + 2 * pad + truncation_extra;
    std::vector<AuxProcess> aux;
    aux.reserve(static_cast<size_t>(a_hi - a_lo + 1));
    std::vector<int64_t> zk0_all =
        initial_heights(init, n, a_lo, a_hi, seed); // same seed => same z0 as traj
    for (int64_t k = a_lo; k <= a_hi; ++k) {
        // window always covers the growth corner m = 0, so all activity
        // originates inside it and the light cone bound applies
        int64_t m_lo = std::min(lo - k, static_cast<int64_t>(0)) - pad - 4;
        int64_t m_hi = std::max(hi - k, static_cast<int64_t>(0)) + pad + 4;
        aux.push_back(evolve_aux(c_tilde, n, seed, k, zk0_all[static_cast<size_t>(k - a_lo)],
                                 m_lo, m_hi, micro_T, opt, &aux_clocks));
    }
    auto zk0 = [&](int64_t k) { return zk0_all[static_cast<size_t>(k - a_lo)]; };

    // the identity is asserted at every height-process event time as well as
    // at the requested times
    std::vector<double> times = check_times;
    for (const auto& [et, col] : traj.events) times.push_back(et);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    for (double t : times) {
        auto zt = traj.heights_at(t);
        for (int64_t i = lo; i <= hi; ++i) {
            // left sentinel: largest k < i with xi^k_{i-k}(t) == 0 dominates all k' < k
            int64_t kl = i - 1;
            bool found_l = false;
            for (; kl >= a_lo; --kl) {
                const AuxProcess& a = aux[static_cast<size_t>(kl - a_lo)];
                if (a.clean_at(i - kl) && a.xi_at(i - kl, t) == 0) {
                    found_l = true;
                    break;
                }
            }
            int64_t kr = i + 1;
            bool found_r = false;
            for (; kr <= a_hi; ++kr) {
                const AuxProcess& a = aux[static_cast<size_t>(kr - a_lo)];
                if (a.clean_at(i - kr) && a.xi_at(i - kr, t) == kr - i) {
                    found_r = true;
                    break;
                }
            }
            if (!found_l || !found_r) {
                rep.inconclusive++;
                continue;
            }
            int64_t best = std::numeric_limits<int64_t>::min();
            bool clean = true;
            for (int64_t k = kl; k <= kr; ++k) {
                const AuxProcess& a = aux[static_cast<size_t>(k - a_lo)];
                clean = clean && a.clean_at(i - k);
                int64_t v = zk0(k) - a.xi_at(i - k, t);
                best = std::max(best, v);
            }
            if (!clean) {
                rep.inconclusive++;
                continue;
            }
            rep.checked++;
            int64_t zi = zt[static_cast<size_t>(i - lo)];
            if (best != zi) {
                rep.violations++;
                if (rep.details.size() < 16) {
                    char buf[160];
                    std::snprintf(buf, sizeof(buf),
                                  "envelope mismatch at i=%lld t=%.6f: z=%lld sup=%lld",
                                  static_cast<long long>(i), t, static_cast<long long>(zi),
                                  static_cast<long long>(best));
                    rep.details.push_back(buf);
                }
            }
        }
    }
    return rep;
}

} // namespace th
