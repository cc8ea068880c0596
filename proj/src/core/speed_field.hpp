#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geom.hpp"

namespace th {

// Absolute tolerance for "exactly on a discontinuity curve".
constexpr double kCurveTol = 1e-12;

struct DiscontinuityCurve {
    enum class Shape { line_segment, monotone_graph };
    Shape shape = Shape::line_segment;

    // line_segment: y = slope*x + intercept on x in [z,w], or x = intercept on
    // y in [z,w] when vertical.
    bool vertical = false;
    double slope = 0.0;
    double intercept = 0.0;
    double z = -1e300;
    double w = 1e300;

    // monotone_graph: strictly monotone samples, monotone-cubic interpolated.
    std::vector<double> xs;
    std::vector<double> ys;
};

// The macroscopic speed function. Concrete families implement value() with
// the lower-semicontinuity convention baked in: points on a discontinuity
// curve take the minimum of the adjacent one-sided limits, which is also the
// continuous extension from the lower-speed side. Fields are immutable after
// construction and safe for concurrent reads.
class SpeedField {
  public:
    enum class Kind { general, spatial_only, constant };

    virtual ~SpeedField() = default;

    virtual double value(double x, double y) const = 0;
    virtual Kind kind() const { return Kind::general; }
    virtual std::string describe() const = 0;
    virtual std::vector<DiscontinuityCurve> curves() const { return {}; }

    // Exact range on a rectangle where the family makes it trivial.
    virtual std::optional<std::pair<double, double>> exact_bounds(const Rect&) const {
        return std::nullopt;
    }

    double eval(Point p) const { return value(p.x, p.y); }

    // (liminf, limsup) over shrinking balls, by ring probing. At continuity
    // points returns exactly (eval, eval).
    std::pair<double, double> envelopes(Point p) const;

    // Certified-by-sampling (r_low, r_high) on a compact rectangle; cached.
    std::pair<double, double> bounds_on(const Rect& rect) const;

    // sup of c over doubling squares centred at `a`, paired with sup/log(side).
    // Sides run over 2^k for k = 2..max_pow.
    std::vector<std::pair<double, double>> growth_probe(Point a, int max_pow = 16) const;

  private:
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<uint64_t, std::pair<double, double>> bounds_cache_;
};

using FieldPtr = std::shared_ptr<const SpeedField>;

// ---- preset families -------------------------------------------------------

FieldPtr make_constant(double c0);
// step across the vertical line x = x0
FieldPtr make_xstep(double x0, double left, double right);
// step across the horizontal line y = y0
FieldPtr make_ystep(double y0, double low, double high);
// step across y = slope*x + intercept
FieldPtr make_oblique_step(double slope, double intercept, double below, double above);
// checkerboard on cells of size (px, py) anchored at (x0, y0)
FieldPtr make_rect_checker(double px, double py, double x0, double y0, double a, double b);
// base + amp*sin(fx*x)*sin(fy*y), kept positive by construction
FieldPtr make_bump(double base, double amp, double fx, double fy);
// two regions split by a strictly monotone tabulated graph
FieldPtr make_tabulated(std::vector<double> xs, std::vector<double> ys, double below,
                        double above);

// ---- views -----------------------------------------------------------------

// c~(x,y) = c(x+y, y): LPP frame -> particle frame.
FieldPtr shear(FieldPtr base);
// c(u,y) = c~(u-y, y): particle frame -> LPP frame.
FieldPtr unshear(FieldPtr base);
// (T_{a,b} c)(x,y) = c(x+a, y+b).
FieldPtr shift(FieldPtr base, double a, double b);

// ---- description files -----------------------------------------------------

// Plain-text key=value format; '#' starts a comment. The `family` key selects
// a preset. See README for the exact grammar.
FieldPtr parse_speed_field(const std::string& text);
FieldPtr load_speed_field(const std::string& path);

// Assumption probes (positivity, curve slopes, growth). Returns human-readable
// warnings; empty means no issue found.
std::vector<std::string> check_field_assumptions(const FieldPtr& f, bool particle_frame);

} // namespace th
