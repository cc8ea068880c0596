#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace th {

// Initial particle density rho0 in [0,1] together with the integrated current
// v0(q) = int_0^q rho0 (v0(0) = 0, Lipschitz-1, nondecreasing) and the
// microscopic occupation sampler that realises it.
struct InitialData {
    enum class Family { riemann, bernoulli, table };
    Family family = Family::riemann;
    double left = 1.0;               // riemann: rho for x < 0
    double right = 0.0;              // riemann: rho for x >= 0
    double p = 0.5;                  // bernoulli
    std::vector<double> xs;          // table breakpoints (strictly increasing)
    std::vector<double> rhos;        // table: rho on [xs[k], xs[k+1]); rhos[0] left of xs[0]

    // Accepted specs: "step" (rho = 1{x<=0}), "rstep" (rho = 1{x>=0}),
    // "riemann:a,b", "bernoulli:p", "flat:r" (= bernoulli with deterministic
    // rounding handled by the sampler), "file:PATH" (lines: x rho).
    static InitialData parse(const std::string& spec);

    double rho0(double x) const;
    double v0(double q) const;
    std::vector<double> kinks() const; // breakpoints of v0 (candidate maximizers)
    std::string describe() const;

    // eta_i(0) for scale n; deterministic where rho0 is 0/1, Bernoulli otherwise.
    int occupation(int64_t site, int64_t n, uint64_t seed) const;
};

} // namespace th
