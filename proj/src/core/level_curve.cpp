#include "level_curve.hpp"

#include <cmath>

#include "error.hpp"

namespace th {

LevelCurveSolver::LevelCurveSolver(FieldPtr c_lpp, Point start, double r_lo, double r_hi,
                                   double t_max, LevelCurveOptions opt)
    : field_(std::move(c_lpp)), start_(start), r_lo_(r_lo), r_hi_(r_hi), t_max_(t_max),
      opt_(opt) {
    require(t_max > 0.0 && r_hi >= r_lo, errc::invalid_argument,
            "level curve needs t_max > 0 and a proper r-range");
    // generous box for the speed bounds: covers every grid we may build
    double guess = 1.0 + std::fabs(r_hi_) + std::fabs(r_lo_) + 4.0 * t_max_;
    Rect box{start_.x - 1.0, start_.y - 1.0, start_.x + guess, start_.y + guess};
    r_high_ = field_->bounds_on(box).second;
    build(cap0(t_max_));
}

void LevelCurveSolver::build(double cap) {
    cap_ = cap;
    const double pad = 6.0 * opt_.h;
    ShapeOptions sopt;
    sopt.max_slope = opt_.max_slope;
    sopt.axis_launches = opt_.axis_launches;
    sopt.max_launch_samples = opt_.max_launch_samples;
    main_.reset();
    wall_.reset();
    if (r_hi_ >= 0.0) {
        double w = r_hi_ + cap_ + pad;
        main_ = std::make_unique<ValueGrid>(field_, start_, w, cap_ + pad, opt_.h, sopt);
    }
    if (r_lo_ < 0.0) {
        double hgt = wedge_floor(r_lo_) + cap_ + pad;
        wall_ = std::make_unique<ValueGrid>(field_, start_, cap_ + pad, hgt, opt_.h, sopt);
    }
}

void LevelCurveSolver::ensure(double cap_needed) {
    if (cap_needed <= cap_) return;
    build(std::max(cap_needed, 1.5 * cap_));
}

void LevelCurveSolver::ensure_r(double r) {
    if (r >= r_lo_ - 1e-12 && r <= r_hi_ + 1e-12) return;
    r_lo_ = std::min(r_lo_, r - 0.25);
    r_hi_ = std::max(r_hi_, r + 0.25);
    build(cap_);
}

double LevelCurveSolver::value(double rx, double ry) const {
    // queries with rx - ry >= 0 live in the bottom strip, the rest in the wall
    if (rx >= ry) return main_->value_rel(rx, ry);
    return wall_->value_rel(rx, ry);
}

double LevelCurveSolver::gamma_rel(double rx, double ry) {
    require(rx >= -1e-9 && ry >= -1e-9, errc::invalid_argument,
            "gamma_rel needs nonnegative displacement");
    double r = rx - ry;
    ensure_r(r);
    ensure(ry - wedge_floor(r) + 2.0 * opt_.h);
    return value(rx, ry);
}

double LevelCurveSolver::g(double r, double t) {
    require(t > 0.0, errc::invalid_argument, "level curve needs t > 0");
    ensure_r(r);
    const double y_lo = wedge_floor(r);
    ensure(cap0(t));
    auto H = [&](double y) { return value(r + y, y); };
    if (H(y_lo) >= t) return y_lo; // attained on the wedge boundary
    double span = cap_;
    while (H(y_lo + span) < t) {
        double grown = 2.0 * span;
        require(y_lo + grown <= hard_cap(r, t) + 1.0, errc::run_invalid,
                "level curve cap exceeded; field violates the growth bounds");
        ensure(grown);
        span = grown;
    }
    double lo = y_lo, hi = y_lo + span;
    while (hi - lo > opt_.bisect_tol) {
        double mid = 0.5 * (lo + hi);
        (H(mid) >= t ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double LevelCurveSolver::g_x(double r, double t, double delta) {
    return (g(r + delta, t) - g(r - delta, t)) / (2.0 * delta);
}

} // namespace th
