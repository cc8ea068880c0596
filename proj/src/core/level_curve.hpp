#pragma once

#include <memory>

#include "shape.hpp"
#include "speed_field.hpp"

namespace th {

inline double wedge_floor(double r) { return r < 0.0 ? -r : 0.0; } // beta(x) = (-x)+

struct LevelCurveOptions {
    double h = 1.0 / 48;
    double bisect_tol = 1e-4;
    double y_margin = 0.35;       // slack added to the search cap above the wedge floor
    int max_slope = 6;
    bool axis_launches = false;   // per-q solvers lean on the origin launch
    int max_launch_samples = 96;
};

// Level curves of the shape function from one start point:
//   g(r, t) = inf { y >= beta(r) : Gamma(start -> start + (r+y, y)) >= t }.
//
// The value function is held on two exact sub-grids sharing the start corner:
// a wide strip along the x-axis (queries with r >= 0, whose y stays below the
// search cap) and a tall strip along the y-axis (queries with r < 0, whose
// x-coordinate r+y stays below the cap). Monotone paths to a point of either
// strip never leave it, so the strip DP solves the same problem as the full
// rectangle. Grids are rebuilt larger when a query outgrows the cap or the
// r-range. Not safe for concurrent use.
class LevelCurveSolver {
  public:
    LevelCurveSolver(FieldPtr c_lpp, Point start, double r_lo, double r_hi, double t_max,
                     LevelCurveOptions opt = {});

    double g(double r, double t);
    // Gamma(start -> start + (rx, ry)) along query rays.
    double gamma_rel(double rx, double ry);
    // dg/dr by centered differences (spacing delta).
    double g_x(double r, double t, double delta);

    Point start() const { return start_; }
    double r_high() const { return r_high_; }
    double cap0(double t) const { return opt_.y_margin + 0.3 * t * r_high_; }
    double hard_cap(double r, double t) const {
        return t * r_high_ + std::fabs(r) + 1.0 + wedge_floor(r);
    }

  private:
    void build(double cap);
    void ensure(double cap_needed);
    void ensure_r(double r);
    double value(double rx, double ry) const;

    FieldPtr field_;
    Point start_;
    double r_lo_, r_hi_, t_max_;
    LevelCurveOptions opt_;
    double r_high_ = 1.0;
    double cap_ = 0.0;
    std::unique_ptr<ValueGrid> main_;  // y <= cap, present when r_hi_ >= 0
    std::unique_ptr<ValueGrid> wall_;  // x <= cap, present when r_lo_ < 0
};

} // namespace th
