#pragma once

#include <functional>
#include <vector>

#include "environment.hpp"
#include "geom.hpp"

namespace th {

using WeightFn = std::function<double(int64_t, int64_t)>; // absolute lattice coords

enum class PassageFrame { corner, wedge };

// Last-passage values on a lattice rectangle (or sheared wedge window).
struct PassageGrid {
    LatticePoint start{0, 0};
    int64_t width = 0, height = 0; // extent; grid holds (width+1)*(height+1) values
    PassageFrame frame = PassageFrame::corner;
    std::vector<double> values;    // row-major over relative indices

    double at(int64_t di, int64_t dj) const {
        return values[static_cast<size_t>(dj) * (width + 1) + di];
    }
};

// G(v) = max(G(v-e1), G(v-e2)) + w(v), G(start) = w(start): every vertex of
// the path, both endpoints included, collects its weight.
PassageGrid passage_rect(const WeightFn& w, LatticePoint start, int64_t width, int64_t height,
                         size_t mem_cap_mb = 4096);

// Terminal value only, rolling storage.
double passage_rect_terminal(const WeightFn& w, LatticePoint start, LatticePoint end);

// Zero boundary on both axes; interior vertices collect weights. This is the
// corner form of the wedge passage times.
PassageGrid passage_corner_zero_boundary(const WeightFn& w, int64_t width, int64_t height,
                                         size_t mem_cap_mb = 4096);

// Wedge passage times L(i,j), i in [i_lo, i_hi], 0 <= j <= j_max, via the
// shear u = i+j, v = j onto the zero-boundary corner recurrence; weight of the
// wedge vertex (i,j) is w(i+j, j).
struct WedgeGrid {
    int64_t i_lo = 0, i_hi = 0, j_max = 0;
    std::vector<double> values; // row-major, index (j, i - i_lo); -inf outside the wedge

    double at(int64_t i, int64_t j) const {
        return values[static_cast<size_t>(j) * (i_hi - i_lo + 1) + (i - i_lo)];
    }
    bool in_wedge(int64_t i, int64_t j) const { return j >= (i <= 0 ? -i : 0); }
};
WedgeGrid passage_wedge(const WeightFn& w, int64_t i_lo, int64_t i_hi, int64_t j_max);

// Exact-coupling wedge passage times driven by the shared clock field:
// L(i,j) = first ring of site (i + k, j - 1 + row_off) after
// max(L(i-1,j), L(i+1,j-1)). Equals the auxiliary height process reach times
// pathwise. Out-of-window neighbours count as +inf (frozen).
WedgeGrid wedge_passage_clock(ClockField& clocks, int64_t k, int64_t row_off, int64_t i_lo,
                              int64_t i_hi, int64_t j_max);

// LLN table: G^{(n)}_{(floor(na), floor(nb)), (floor(nx), floor(ny))} / n.
struct LlnRow {
    int64_t n;
    int replica;
    double value;
};
struct LlnTable {
    std::vector<LlnRow> rows;
    std::vector<int64_t> ns;
    std::vector<double> mean;
    std::vector<double> stderr_;
};
LlnTable lln_estimate(const FieldPtr& c_lpp, Point start, Point target,
                      const std::vector<int64_t>& ns, int replicas, uint64_t seed,
                      size_t mem_cap_mb = 4096);

} // namespace th
