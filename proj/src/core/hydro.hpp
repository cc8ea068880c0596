#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "init_data.hpp"
#include "level_curve.hpp"
#include "speed_field.hpp"

namespace th {

struct HydroOptions {
    double grid_h = 1.0 / 48;
    double dq = 0.04;          // base maximizer-search lattice spacing
    int refine_levels = 2;     // extra lattice refinements around the incumbent
    double bisect_tol = 1e-6;
    double tie_tol = 1e-6;
    int threads = 0;
    double trunc_margin = 1.0; // added to t*r_high on both sides
    size_t bank_cap = 700;     // max level-curve solvers kept alive
};

struct Profile {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> rho;      // symmetric differences of v, clamped to [0,1]
    std::vector<double> qstar;
    std::vector<double> gstar;
    std::vector<int> contact_case; // 0 interior, 1 contact g=0, 2 contact at the wall
    double q_lo = 0.0, q_hi = 0.0; // maximizer truncation actually used
};

struct PointValue {
    double v = 0.0;
    double qstar = 0.0;
    double gstar = 0.0;
    std::vector<double> ties;
};

// Hydrodynamic current by the envelope formula
//   v(x,t) = sup_q { v0(q) - g^q(x-q, t) },
// with g^q the level curve of the shape function rooted at (q - v0(q), -v0(q)).
// The supremum is exact outside [x - t*r_high - m, x + t*r_high + m]: to the
// left of that window g^q = 0 and F = v0(q) is nondecreasing, to the right
// g^q = q - x and F = x + (v0(q) - q) is nonincreasing, so both edges dominate
// their tails.
class HydroSolver {
  public:
    HydroSolver(FieldPtr c_tilde, InitialData init, double t_max, HydroOptions opt = {});

    double v(double x, double t);
    PointValue v_detail(double x, double t);
    Profile profile(const std::vector<double>& xs, double t);
    // size new level-curve solvers for queries in [x_lo, x_hi]
    void reserve_x_range(double x_lo, double x_hi);

    std::pair<double, double> truncation(double x, double t);
    double r_high() const { return r_high_; }
    const InitialData& init() const { return init_; }
    FieldPtr c_tilde() const { return c_tilde_; }
    FieldPtr c_lpp() const { return c_lpp_; }

    std::shared_ptr<LevelCurveSolver> solver_for(double q);
    double q_quantum() const { return quantum_; }
    double quantize_q(double q) const;

  private:
    double F(double q, double x, double t);
    PointValue maximize(double x, double t);

    FieldPtr c_tilde_;
    FieldPtr c_lpp_;
    InitialData init_;
    HydroOptions opt_;
    double t_max_;
    double r_high_ = 1.0;
    double quantum_;
    double x_hint_lo_ = 1e300, x_hint_hi_ = -1e300;
    struct BankEntry {
        std::shared_ptr<LevelCurveSolver> solver;
        uint64_t last_use = 0;
    };
    std::map<double, BankEntry> bank_;
    uint64_t bank_clock_ = 0;
    std::mutex bank_mutex_;
};

// Checks that each recorded maximizer either satisfies the interior
// level-curve equality Gamma^{q*}(x - q* + g, g) = t or sits in a contact
// state. Returns the worst interior residual and the per-case counts.
struct MaximizerReport {
    int interior = 0;
    int contact_floor = 0;
    int contact_wall = 0;
    double max_level_residual = 0.0;
    bool ok = true;
};
MaximizerReport maximizer_diagnostics(HydroSolver& solver, const Profile& prof,
                                      double tol = 2e-2);

// Lax-Oleinik value by direct maximization over piecewise-constant controls
// on m intervals; independent of the envelope machinery.
double lax_oleinik_value(const FieldPtr& c_tilde, const InitialData& init, double x, double t,
                         int m, int extra_starts = 24, uint64_t seed = 1);

// inf_xi { xi*p + c*psi(xi/c) } - c*p*(1-p); zero up to rounding for p in [0,1].
double fenchel_gap(double c, double p);

} // namespace th
