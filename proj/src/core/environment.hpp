#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "geom.hpp"
#include "rng.hpp"
#include "speed_field.hpp"

namespace th {

// Seeded inhomogeneous exponential LPP environment. weight(i,j) has mean
// c((i+a)/n, (j+b)/n)^{-1}; every weight is a pure function of
// (seed, i, j), independent of traversal order.
struct Environment {
    uint64_t seed = 1;
    int64_t n = 1;
    FieldPtr c_lpp;
    LatticePoint origin_shift{0, 0};

    double rate_at(int64_t i, int64_t j) const {
        return c_lpp->value(static_cast<double>(i + origin_shift.i) / n,
                            static_cast<double>(j + origin_shift.j) / n);
    }
    double weight(int64_t i, int64_t j) const {
        return rng::exponential(rng::key(seed, rng::stream_weight, i, j, 0), rate_at(i, j));
    }
};

// One common realisation of the Poisson clock field N_{i,j} with rates
// c~((i)/n, (j)/n). Ring times per site are prefix sums of counter-keyed
// exponentials, so every consumer that looks at site (i,j) sees the same
// rings -- the exact coupling behind the envelope identity.
class ClockField {
  public:
    ClockField(FieldPtr c_tilde, int64_t n, uint64_t seed, double horizon)
        : field_(std::move(c_tilde)), n_(n), seed_(seed), horizon_(horizon) {}

    double rate(int64_t i, int64_t j) const {
        return field_->value(static_cast<double>(i) / n_, static_cast<double>(j) / n_);
    }
    double horizon() const { return horizon_; }

    // First ring strictly after time s, or +inf if none before the horizon.
    double first_ring_after(int64_t i, int64_t j, double s);

    size_t cached_sites() const { return rings_.size(); }

  private:
    static uint64_t pack(int64_t i, int64_t j) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) ^
               static_cast<uint32_t>(j);
    }
    std::vector<double>& rings_for(int64_t i, int64_t j, double upto);

    FieldPtr field_;
    int64_t n_;
    uint64_t seed_;
    double horizon_;
    std::unordered_map<uint64_t, std::vector<double>> rings_;
};

} // namespace th
