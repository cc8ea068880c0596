#include "passage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "util.hpp"

namespace th {

namespace {
constexpr double ninf = -std::numeric_limits<double>::infinity();

void check_mem(int64_t width, int64_t height, size_t cap_mb) {
    double bytes = 8.0 * (width + 1.0) * (height + 1.0);
    require(bytes <= cap_mb * 1048576.0, errc::mem_budget,
            "passage grid exceeds the memory budget");
}
} // namespace

PassageGrid passage_rect(const WeightFn& w, LatticePoint start, int64_t width, int64_t height,
                         size_t mem_cap_mb) {
    require(width >= 0 && height >= 0, errc::invalid_argument, "extent must be >= (0,0)");
    check_mem(width, height, mem_cap_mb);
    PassageGrid g;
    g.start = start;
    g.width = width;
    g.height = height;
    g.values.resize(static_cast<size_t>(width + 1) * (height + 1));
    for (int64_t dj = 0; dj <= height; ++dj) {
        for (int64_t di = 0; di <= width; ++di) {
            double up = dj > 0 ? g.values[static_cast<size_t>(dj - 1) * (width + 1) + di] : ninf;
            double left = di > 0 ? g.values[static_cast<size_t>(dj) * (width + 1) + di - 1] : ninf;
            double best = std::max(up, left);
            if (di == 0 && dj == 0) best = 0.0;
            g.values[static_cast<size_t>(dj) * (width + 1) + di] =
                best + w(start.i + di, start.j + dj);
        }
    }
    return g;
}

double passage_rect_terminal(const WeightFn& w, LatticePoint start, LatticePoint end) {
    int64_t width = end.i - start.i, height = end.j - start.j;
    require(width >= 0 && height >= 0, errc::invalid_argument, "end must dominate start");
    std::vector<double> row(static_cast<size_t>(width) + 1);
    for (int64_t dj = 0; dj <= height; ++dj) {
        for (int64_t di = 0; di <= width; ++di) {
            double up = dj > 0 ? row[di] : ninf;
            double left = di > 0 ? row[di - 1] : ninf;
            double best = std::max(up, left);
            if (di == 0 && dj == 0) best = 0.0;
            row[di] = best + w(start.i + di, start.j + dj);
        }
    }
    return row[width];
}

PassageGrid passage_corner_zero_boundary(const WeightFn& w, int64_t width, int64_t height,
                                         size_t mem_cap_mb) {
    require(width >= 0 && height >= 0, errc::invalid_argument, "extent must be >= (0,0)");
    check_mem(width, height, mem_cap_mb);
    PassageGrid g;
    g.width = width;
    g.height = height;
    g.values.assign(static_cast<size_t>(width + 1) * (height + 1), 0.0);
    for (int64_t v = 1; v <= height; ++v)
        for (int64_t u = 1; u <= width; ++u)
            g.values[static_cast<size_t>(v) * (width + 1) + u] =
                std::max(g.values[static_cast<size_t>(v - 1) * (width + 1) + u],
                         g.values[static_cast<size_t>(v) * (width + 1) + u - 1]) +
                w(u, v);
    return g;
}

WedgeGrid passage_wedge(const WeightFn& w, int64_t i_lo, int64_t i_hi, int64_t j_max) {
    require(i_lo <= i_hi && j_max >= 0, errc::invalid_argument, "bad wedge window");
    WedgeGrid g;
    g.i_lo = i_lo;
    g.i_hi = i_hi;
    g.j_max = j_max;
    int64_t w_cols = i_hi - i_lo + 1;
    g.values.assign(static_cast<size_t>(w_cols) * (j_max + 1), ninf);
    auto val = [&](int64_t i, int64_t j) -> double& {
        return g.values[static_cast<size_t>(j) * w_cols + (i - i_lo)];
    };
    for (int64_t j = 0; j <= j_max; ++j) {
        for (int64_t i = i_lo; i <= i_hi; ++i) {
            if (!g.in_wedge(i, j)) continue;
            if (j == (i <= 0 ? -i : 0)) {
                val(i, j) = 0.0; // boundary of the wedge
                continue;
            }
            // xi_i reaching level j needs xi_{i-1} >= j and xi_{i+1} >= j-1
            double a = i - 1 >= i_lo ? val(i - 1, j) : ninf;
            double b = i + 1 <= i_hi && g.in_wedge(i + 1, j - 1) ? val(i + 1, j - 1) : ninf;
            if (i - 1 < i_lo && i + 1 > i_hi) continue;
            double from = std::max(a, b);
            val(i, j) = from + w(i + j, j);
        }
    }
    return g;
}

WedgeGrid wedge_passage_clock(ClockField& clocks, int64_t k, int64_t row_off, int64_t i_lo,
                              int64_t i_hi, int64_t j_max) {
    require(i_lo <= i_hi && j_max >= 0, errc::invalid_argument, "bad wedge window");
    constexpr double pinf = std::numeric_limits<double>::infinity();
    WedgeGrid g;
    g.i_lo = i_lo;
    g.i_hi = i_hi;
    g.j_max = j_max;
    int64_t w_cols = i_hi - i_lo + 1;
    g.values.assign(static_cast<size_t>(w_cols) * (j_max + 1), pinf);
    auto val = [&](int64_t i, int64_t j) -> double& {
        return g.values[static_cast<size_t>(j) * w_cols + (i - i_lo)];
    };
    for (int64_t j = 0; j <= j_max; ++j) {
        for (int64_t i = i_lo; i <= i_hi; ++i) {
            if (!g.in_wedge(i, j)) continue;
            if (j == (i <= 0 ? -i : 0)) {
                val(i, j) = 0.0;
                continue;
            }
            double a = i - 1 >= i_lo ? val(i - 1, j) : pinf;
            double b = i + 1 <= i_hi ? (g.in_wedge(i + 1, j - 1) ? val(i + 1, j - 1) : 0.0)
                                     : pinf;
            double from = std::max(a, b);
            if (std::isinf(from)) {
                val(i, j) = pinf; // frozen by the window edge
                continue;
            }
            val(i, j) = clocks.first_ring_after(i + k, j - 1 + row_off, from);
        }
    }
    return g;
}

LlnTable lln_estimate(const FieldPtr& c_lpp, Point start, Point target,
                      const std::vector<int64_t>& ns, int replicas, uint64_t seed,
                      size_t mem_cap_mb) {
    require(replicas >= 1, errc::invalid_argument, "need at least one replica");
    require(target.x >= start.x && target.y >= start.y, errc::invalid_argument,
            "target must dominate start");
    LlnTable table;
    table.ns = ns;
    table.rows.resize(ns.size() * replicas);
    std::vector<std::pair<size_t, int>> jobs;
    for (size_t a = 0; a < ns.size(); ++a)
        for (int r = 0; r < replicas; ++r) jobs.emplace_back(a, r);
    parallel_for(jobs.size(), [&](size_t idx) {
        auto [a, r] = jobs[idx];
        int64_t n = ns[a];
        require(n >= 1, errc::invalid_argument, "scale n must be positive");
        Environment env{rng::replica_seed(seed, r), n, c_lpp, {0, 0}};
        check_mem(static_cast<int64_t>(std::floor(n * (target.x - start.x))) + 1, 1,
                  mem_cap_mb); // rolling row of the terminal-value recursion
        LatticePoint s{static_cast<int64_t>(std::floor(n * start.x)),
                       static_cast<int64_t>(std::floor(n * start.y))};
        LatticePoint e{static_cast<int64_t>(std::floor(n * target.x)),
                       static_cast<int64_t>(std::floor(n * target.y))};
        double G = passage_rect_terminal([&](int64_t i, int64_t j) { return env.weight(i, j); },
                                         s, e);
        table.rows[idx] = {n, r, G / static_cast<double>(n)};
    });
    table.mean.resize(ns.size());
    table.stderr_.resize(ns.size());
    for (size_t a = 0; a < ns.size(); ++a) {
        double m = 0.0;
        for (int r = 0; r < replicas; ++r) m += table.rows[a * replicas + r].value;
        m /= replicas;
        double s2 = 0.0;
        for (int r = 0; r < replicas; ++r) {
            double d = table.rows[a * replicas + r].value - m;
            s2 += d * d;
        }
        table.mean[a] = m;
        table.stderr_[a] = replicas > 1 ? std::sqrt(s2 / (replicas - 1.0) / replicas) : 0.0;
    }
    return table;
}

} // namespace th
