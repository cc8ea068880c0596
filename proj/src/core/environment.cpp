#include "environment.hpp"

#include <algorithm>
#include <limits>

#include "error.hpp"

namespace th {

std::vector<double>& ClockField::rings_for(int64_t i, int64_t j, double upto) {
    auto& rings = rings_[pack(i, j)];
    double rate = this->rate(i, j);
    double cap = std::min(upto, horizon_);
    while (rings.empty() || rings.back() <= cap) {
        double last = rings.empty() ? 0.0 : rings.back();
        if (last > horizon_) break;
        uint64_t k = rings.size();
        rings.push_back(last +
                        rng::exponential(rng::key(seed_, rng::stream_clock, i, j, k), rate));
        require(rings.size() < 4096 + 64 * static_cast<size_t>(rate * horizon_ + 1.0),
                errc::run_invalid, "clock stream ran away; check field positivity");
    }
    return rings;
}

double ClockField::first_ring_after(int64_t i, int64_t j, double s) {
    if (s >= horizon_) return std::numeric_limits<double>::infinity();
    auto& rings = rings_for(i, j, s);
    auto it = std::upper_bound(rings.begin(), rings.end(), s);
    if (it == rings.end() || *it > horizon_) return std::numeric_limits<double>::infinity();
    return *it;
}

} // namespace th
