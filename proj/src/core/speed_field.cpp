#include "speed_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "error.hpp"

namespace th {

namespace {

uint64_t rect_key(const Rect& r) {
    uint64_t h = 1469598103934665603ull;
    for (double v : {r.x0, r.y0, r.x1, r.y1}) {
        uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        h = (h ^ bits) * 1099511628211ull;
    }
    return h;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::pair<double, double> SpeedField::envelopes(Point p) const {
    const double v0 = value(p.x, p.y);
    constexpr int n_angles = 48;
    double lo = v0, hi = v0;
    for (double r : {1e-3, 1e-5, 1e-7}) {
        lo = v0;
        hi = v0;
        for (int a = 0; a < n_angles; ++a) {
            double t = (a + 0.5) * (2.0 * M_PI / n_angles);
            double v = value(p.x + r * std::cos(t), p.y + r * std::sin(t));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    // lo/hi now reflect the smallest radius; a genuine jump keeps a gap that
    // does not shrink with the radius, a continuity point does not.
    if (hi - lo <= 1e-5 * std::max(1.0, std::fabs(v0))) return {v0, v0};
    return {std::min(lo, v0), std::max(hi, v0)};
}

std::pair<double, double> SpeedField::bounds_on(const Rect& rect) const {
    require(rect.valid(), errc::invalid_argument, "bounds_on: negative-extent rectangle");
    const uint64_t key = rect_key(rect);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = bounds_cache_.find(key);
        if (it != bounds_cache_.end()) return it->second;
    }
    std::pair<double, double> out;
    if (auto exact = exact_bounds(rect)) {
        out = *exact;
    } else {
        constexpr int n = 64;
        double lo = 1e300, hi = -1e300;
        Point arg_lo{}, arg_hi{};
        const double dx = rect.width() > 0 ? rect.width() / n : 0.0;
        const double dy = rect.height() > 0 ? rect.height() / n : 0.0;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                Point p{rect.x0 + i * dx, rect.y0 + j * dy};
                double v = value(p.x, p.y);
                if (v < lo) { lo = v; arg_lo = p; }
                if (v > hi) { hi = v; arg_hi = p; }
            }
        }
        // local pattern-search refinement of both extrema
        auto refine = [&](Point p, int sign) {
            double best = sign * value(p.x, p.y);
            double step = std::max(dx, dy);
            if (step == 0.0) return -sign * best * sign == 0 ? best : best;
            for (int it = 0; it < 48; ++it) {
                bool moved = false;
                for (auto [ox, oy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0},
                                      {1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}}) {
                    Point q{std::clamp(p.x + ox * step, rect.x0, rect.x1),
                            std::clamp(p.y + oy * step, rect.y0, rect.y1)};
                    double v = sign * value(q.x, q.y);
                    if (v < best) { best = v; p = q; moved = true; }
                }
                if (!moved) step *= 0.5;
                if (step < 1e-10) break;
            }
            return best;
        };
        lo = std::min(lo, refine(arg_lo, +1));
        hi = std::max(hi, -refine(arg_hi, -1));
        out = {lo, hi};
    }
    require(out.first > 0.0, errc::invalid_argument,
            "speed field not positive on queried rectangle");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    bounds_cache_.emplace(key, out);
    return out;
}

std::vector<std::pair<double, double>> SpeedField::growth_probe(Point a, int max_pow) const {
    std::vector<std::pair<double, double>> out;
    for (int k = 2; k <= max_pow; ++k) {
        double s = std::pow(2.0, k);
        constexpr int n = 96;
        double hi = -1e300;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                hi = std::max(hi, value(a.x - s + 2 * s * i / n, a.y - s + 2 * s * j / n));
        out.emplace_back(hi, hi / std::log(2.0 * s));
    }
    return out;
}

// ---- families ---------------------------------------------------------------

namespace {

class ConstantField final : public SpeedField {
  public:
    explicit ConstantField(double c0) : c0_(c0) {
        require(c0 > 0.0, errc::invalid_argument, "constant speed must be positive");
    }
    double value(double, double) const override { return c0_; }
    Kind kind() const override { return Kind::constant; }
    std::string describe() const override { return "constant(" + fmt(c0_) + ")"; }
    std::optional<std::pair<double, double>> exact_bounds(const Rect&) const override {
        return std::pair{c0_, c0_};
    }

  private:
    double c0_;
};

class XStepField final : public SpeedField {
  public:
    XStepField(double x0, double l, double r) : x0_(x0), left_(l), right_(r) {
        require(l > 0 && r > 0, errc::invalid_argument, "step values must be positive");
    }
    double value(double x, double) const override {
        if (x < x0_ - kCurveTol) return left_;
        if (x > x0_ + kCurveTol) return right_;
        return std::min(left_, right_);
    }
    Kind kind() const override { return Kind::spatial_only; }
    std::string describe() const override {
        return "xstep(x0=" + fmt(x0_) + ",left=" + fmt(left_) + ",right=" + fmt(right_) + ")";
    }
    std::vector<DiscontinuityCurve> curves() const override {
        DiscontinuityCurve c;
        c.vertical = true;
        c.intercept = x0_;
        return {c};
    }
    std::optional<std::pair<double, double>> exact_bounds(const Rect& r) const override {
        double lo = 1e300, hi = -1e300;
        if (r.x0 < x0_) { lo = std::min(lo, left_); hi = std::max(hi, left_); }
        if (r.x1 > x0_) { lo = std::min(lo, right_); hi = std::max(hi, right_); }
        if (r.x0 <= x0_ && x0_ <= r.x1) lo = std::min(lo, std::min(left_, right_));
        if (hi < lo) { lo = hi = value(r.x0, r.y0); }
        return std::pair{lo, hi};
    }

  private:
    double x0_, left_, right_;
};

class YStepField final : public SpeedField {
  public:
    YStepField(double y0, double lo, double hi) : y0_(y0), low_(lo), high_(hi) {
        require(lo > 0 && hi > 0, errc::invalid_argument, "step values must be positive");
    }
    double value(double, double y) const override {
        if (y < y0_ - kCurveTol) return low_;
        if (y > y0_ + kCurveTol) return high_;
        return std::min(low_, high_);
    }
    std::string describe() const override {
        return "ystep(y0=" + fmt(y0_) + ",low=" + fmt(low_) + ",high=" + fmt(high_) + ")";
    }
    std::vector<DiscontinuityCurve> curves() const override {
        DiscontinuityCurve c;
        c.slope = 0.0;
        c.intercept = y0_;
        return {c};
    }
    std::optional<std::pair<double, double>> exact_bounds(const Rect& r) const override {
        double lo = 1e300, hi = -1e300;
        if (r.y0 < y0_) { lo = std::min(lo, low_); hi = std::max(hi, low_); }
        if (r.y1 > y0_) { lo = std::min(lo, high_); hi = std::max(hi, high_); }
        if (r.y0 <= y0_ && y0_ <= r.y1) lo = std::min(lo, std::min(low_, high_));
        if (hi < lo) { lo = hi = value(r.x0, r.y0); }
        return std::pair{lo, hi};
    }

  private:
    double y0_, low_, high_;
};

class ObliqueStepField final : public SpeedField {
  public:
    ObliqueStepField(double m, double b, double below, double above)
        : m_(m), b_(b), below_(below), above_(above) {
        require(below > 0 && above > 0, errc::invalid_argument, "step values must be positive");
    }
    double value(double x, double y) const override {
        double s = y - (m_ * x + b_);
        double tol = kCurveTol * std::max(1.0, std::fabs(m_ * x) + std::fabs(b_));
        if (s < -tol) return below_;
        if (s > tol) return above_;
        return std::min(below_, above_);
    }
    std::string describe() const override {
        return "oblique_step(slope=" + fmt(m_) + ",intercept=" + fmt(b_) + ",below=" +
               fmt(below_) + ",above=" + fmt(above_) + ")";
    }
    std::vector<DiscontinuityCurve> curves() const override {
        DiscontinuityCurve c;
        c.slope = m_;
        c.intercept = b_;
        return {c};
    }
    std::optional<std::pair<double, double>> exact_bounds(const Rect& r) const override {
        // corner classification against the line
        int below_hits = 0, above_hits = 0;
        for (auto [x, y] : {std::pair{r.x0, r.y0}, {r.x0, r.y1}, {r.x1, r.y0}, {r.x1, r.y1}}) {
            double s = y - (m_ * x + b_);
            if (s < 0) ++below_hits;
            if (s > 0) ++above_hits;
        }
        double lo = 1e300, hi = -1e300;
        if (below_hits > 0) { lo = std::min(lo, below_); hi = std::max(hi, below_); }
        if (above_hits > 0) { lo = std::min(lo, above_); hi = std::max(hi, above_); }
        if (below_hits < 4 && above_hits < 4) lo = std::min(lo, std::min(below_, above_));
        if (hi < lo) { lo = hi = std::min(below_, above_); }
        return std::pair{lo, hi};
    }

  private:
    double m_, b_, below_, above_;
};

class RectCheckerField final : public SpeedField {
  public:
    RectCheckerField(double px, double py, double x0, double y0, double a, double b)
        : px_(px), py_(py), x0_(x0), y0_(y0), a_(a), b_(b) {
        require(px > 0 && py > 0, errc::invalid_argument, "checker cells need positive size");
        require(a > 0 && b > 0, errc::invalid_argument, "checker values must be positive");
    }
    double value(double x, double y) const override {
        double fx = (x - x0_) / px_;
        double fy = (y - y0_) / py_;
        double rx = fx - std::floor(fx);
        double ry = fy - std::floor(fy);
        bool on_vx = rx < kCurveTol / px_ || rx > 1.0 - kCurveTol / px_;
        bool on_hy = ry < kCurveTol / py_ || ry > 1.0 - kCurveTol / py_;
        if (on_vx || on_hy) return std::min(a_, b_); // any cell wall touches both colours
        int64_t ci = static_cast<int64_t>(std::floor(fx));
        int64_t cj = static_cast<int64_t>(std::floor(fy));
        return ((ci + cj) % 2 + 2) % 2 == 0 ? a_ : b_;
    }
    std::string describe() const override {
        return "rect_checker(px=" + fmt(px_) + ",py=" + fmt(py_) + ",a=" + fmt(a_) +
               ",b=" + fmt(b_) + ")";
    }

  private:
    double px_, py_, x0_, y0_, a_, b_;
};

class BumpField final : public SpeedField {
  public:
    BumpField(double base, double amp, double fx, double fy)
        : base_(base), amp_(amp), fx_(fx), fy_(fy) {
        require(base - std::fabs(amp) > 0.0, errc::invalid_argument,
                "bump field must stay positive");
    }
    double value(double x, double y) const override {
        return base_ + amp_ * std::sin(fx_ * x) * std::sin(fy_ * y);
    }
    std::string describe() const override {
        return "bump(base=" + fmt(base_) + ",amp=" + fmt(amp_) + ",fx=" + fmt(fx_) +
               ",fy=" + fmt(fy_) + ")";
    }

  private:
    double base_, amp_, fx_, fy_;
};

// Fritsch-Carlson monotone cubic through strictly monotone samples.
class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        size_t n = xs_.size();
        require(n >= 2 && ys_.size() == n, errc::invalid_argument,
                "tabulated curve needs >= 2 samples");
        for (size_t i = 1; i < n; ++i)
            require(xs_[i] > xs_[i - 1], errc::invalid_argument,
                    "tabulated curve xs must be strictly increasing");
        bool inc = ys_[1] > ys_[0];
        for (size_t i = 1; i < n; ++i)
            require((ys_[i] > ys_[i - 1]) == inc && ys_[i] != ys_[i - 1],
                    errc::invalid_argument, "tabulated curve must be strictly monotone");
        d_.resize(n - 1);
        m_.resize(n);
        for (size_t i = 0; i + 1 < n; ++i) d_[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
        m_[0] = d_[0];
        m_[n - 1] = d_[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) m_[i] = 0.5 * (d_[i - 1] + d_[i]);
        for (size_t i = 0; i + 1 < n; ++i) {
            double a = m_[i] / d_[i], b = m_[i + 1] / d_[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double tau = 3.0 / std::sqrt(s);
                m_[i] = tau * a * d_[i];
                m_[i + 1] = tau * b * d_[i];
            }
        }
    }

    double operator()(double x) const {
        if (x <= xs_.front()) return ys_.front() + m_.front() * (x - xs_.front());
        if (x >= xs_.back()) return ys_.back() + m_.back() * (x - xs_.back());
        size_t i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin() - 1;
        double hsp = xs_[i + 1] - xs_[i];
        double t = (x - xs_[i]) / hsp;
        double t2 = t * t, t3 = t2 * t;
        double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * ys_[i] + h10 * hsp * m_[i] + h01 * ys_[i + 1] + h11 * hsp * m_[i + 1];
    }

    double domain_lo() const { return xs_.front(); }
    double domain_hi() const { return xs_.back(); }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

  private:
    std::vector<double> xs_, ys_, d_, m_;
};

class TabulatedCurveField final : public SpeedField {
  public:
    TabulatedCurveField(std::vector<double> xs, std::vector<double> ys, double below,
                        double above)
        : curve_(std::move(xs), std::move(ys)), below_(below), above_(above) {
        require(below > 0 && above > 0, errc::invalid_argument, "region values must be positive");
    }
    double value(double x, double y) const override {
        double h = curve_(x);
        double s = y - h;
        if (s < -kCurveTol) return below_;
        if (s > kCurveTol) return above_;
        return std::min(below_, above_);
    }
    std::string describe() const override {
        return "tabulated(n=" + std::to_string(curve_.xs().size()) + ",below=" + fmt(below_) +
               ",above=" + fmt(above_) + ")";
    }
    std::vector<DiscontinuityCurve> curves() const override {
        DiscontinuityCurve c;
        c.shape = DiscontinuityCurve::Shape::monotone_graph;
        c.xs = curve_.xs();
        c.ys = curve_.ys();
        c.z = curve_.domain_lo();
        c.w = curve_.domain_hi();
        return {c};
    }

  private:
    MonotoneCubic curve_;
    double below_, above_;
};

// Linear change of coordinates before evaluation: value(x, y) =
// base(x + sx*y + ax, y + by). Covers shear (sx = +-1) and shifts exactly,
// so eval(shear(f), (x,y)) == eval(f, (x+y,y)) bit for bit.
class TransformedField final : public SpeedField {
  public:
    TransformedField(FieldPtr base, double sx, double ax, double by, std::string tag)
        : base_(std::move(base)), sx_(sx), ax_(ax), by_(by), tag_(std::move(tag)) {}

    double value(double x, double y) const override {
        return base_->value(x + sx_ * y + ax_, y + by_);
    }
    Kind kind() const override {
        if (base_->kind() == Kind::constant) return Kind::constant;
        if (base_->kind() == Kind::spatial_only && sx_ == 0.0) return Kind::spatial_only;
        return Kind::general;
    }
    std::string describe() const override { return tag_ + "(" + base_->describe() + ")"; }
    std::vector<DiscontinuityCurve> curves() const override {
        std::vector<DiscontinuityCurve> out;
        for (const auto& c : base_->curves()) {
            // map base-frame curve into view coordinates: x_base = x + sx*y + ax,
            // y_base = y + by
            DiscontinuityCurve t = c;
            if (c.shape == DiscontinuityCurve::Shape::monotone_graph) {
                t.xs.clear();
                t.ys.clear();
                bool graph_ok = true;
                double prev = 0;
                for (size_t k = 0; k < c.xs.size(); ++k) {
                    double yv = c.ys[k] - by_;
                    double xv = c.xs[k] - ax_ - sx_ * yv;
                    if (k > 0 && xv <= prev) graph_ok = false;
                    t.xs.push_back(xv);
                    t.ys.push_back(yv);
                    prev = xv;
                }
                if (!graph_ok) continue; // not a graph in this frame; omit from metadata
                t.z = t.xs.front();
                t.w = t.xs.back();
            } else if (c.vertical) {
                // x_base = k  ->  x + sx*y + ax = k
                if (sx_ == 0.0) {
                    t.intercept = c.intercept - ax_;
                } else {
                    t.vertical = false;
                    t.slope = -1.0 / sx_;
                    t.intercept = (c.intercept - ax_) / sx_;
                    t.z = -1e300;
                    t.w = 1e300;
                }
            } else {
                // y_base = m*x_base + b: y + by = m(x + sx*y + ax) + b
                double denom = 1.0 - c.slope * sx_;
                if (std::fabs(denom) < 1e-14) {
                    t.vertical = true;
                    t.slope = 0.0;
                    t.intercept = (by_ - c.intercept - c.slope * ax_) / c.slope;
                } else {
                    t.vertical = false;
                    t.slope = c.slope / denom;
                    t.intercept = (c.intercept + c.slope * ax_ - by_) / denom;
                }
            }
            out.push_back(std::move(t));
        }
        return out;
    }

  private:
    FieldPtr base_;
    double sx_, ax_, by_;
    std::string tag_;
};

} // namespace

FieldPtr make_constant(double c0) { return std::make_shared<ConstantField>(c0); }
FieldPtr make_xstep(double x0, double l, double r) {
    return std::make_shared<XStepField>(x0, l, r);
}
FieldPtr make_ystep(double y0, double lo, double hi) {
    return std::make_shared<YStepField>(y0, lo, hi);
}
FieldPtr make_oblique_step(double m, double b, double below, double above) {
    return std::make_shared<ObliqueStepField>(m, b, below, above);
}
FieldPtr make_rect_checker(double px, double py, double x0, double y0, double a, double b) {
    return std::make_shared<RectCheckerField>(px, py, x0, y0, a, b);
}
FieldPtr make_bump(double base, double amp, double fx, double fy) {
    return std::make_shared<BumpField>(base, amp, fx, fy);
}
FieldPtr make_tabulated(std::vector<double> xs, std::vector<double> ys, double below,
                        double above) {
    return std::make_shared<TabulatedCurveField>(std::move(xs), std::move(ys), below, above);
}

FieldPtr shear(FieldPtr base) {
    return std::make_shared<TransformedField>(std::move(base), 1.0, 0.0, 0.0, "shear");
}
FieldPtr unshear(FieldPtr base) {
    return std::make_shared<TransformedField>(std::move(base), -1.0, 0.0, 0.0, "unshear");
}
FieldPtr shift(FieldPtr base, double a, double b) {
    return std::make_shared<TransformedField>(std::move(base), 0.0, a, b,
                                              "shift[" + fmt(a) + "," + fmt(b) + "]");
}

// ---- parsing ----------------------------------------------------------------

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            // ignore blank lines / section headers
            continue;
        }
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (!k.empty()) kv[k] = v;
    }
    return kv;
}

double num(const std::map<std::string, std::string>& kv, const std::string& key,
           std::optional<double> def = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (def) return *def;
        fail(errc::parse_error, "speed field: missing key '" + key + "'");
    }
    try {
        size_t pos = 0;
        double v = std::stod(it->second, &pos);
        require(pos == it->second.size(), errc::parse_error,
                "speed field: bad number for '" + key + "'");
        return v;
    } catch (const error&) {
        throw;
    } catch (...) {
        fail(errc::parse_error, "speed field: bad number for '" + key + "'");
    }
}

std::vector<double> num_list(const std::map<std::string, std::string>& kv,
                             const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) fail(errc::parse_error, "speed field: missing key '" + key + "'");
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            fail(errc::parse_error, "speed field: bad list entry in '" + key + "'");
        }
    }
    require(!out.empty(), errc::parse_error, "speed field: empty list '" + key + "'");
    return out;
}

} // namespace

FieldPtr parse_speed_field(const std::string& text) {
    auto kv = parse_kv(text);
    auto fam = kv.find("family");
    require(fam != kv.end(), errc::parse_error, "speed field: missing 'family'");
    const std::string& f = fam->second;
    if (f == "constant") return make_constant(num(kv, "value"));
    if (f == "xstep")
        return make_xstep(num(kv, "x0", 0.0), num(kv, "left"), num(kv, "right"));
    if (f == "ystep") return make_ystep(num(kv, "y0", 0.0), num(kv, "low"), num(kv, "high"));
    if (f == "oblique_step")
        return make_oblique_step(num(kv, "slope"), num(kv, "intercept", 0.0), num(kv, "below"),
                                 num(kv, "above"));
    if (f == "rect_checker")
        return make_rect_checker(num(kv, "px", 1.0), num(kv, "py", 1.0), num(kv, "x0", 0.0),
                                 num(kv, "y0", 0.0), num(kv, "a"), num(kv, "b"));
    if (f == "bump")
        return make_bump(num(kv, "base", 2.0), num(kv, "amp", 1.0), num(kv, "fx", 1.0),
                         num(kv, "fy", 1.0));
    if (f == "tabulated")
        return make_tabulated(num_list(kv, "xs"), num_list(kv, "ys"), num(kv, "below"),
                              num(kv, "above"));
    fail(errc::parse_error, "speed field: unknown family '" + f + "'");
}

FieldPtr load_speed_field(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open speed field file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_speed_field(ss.str());
}

std::vector<std::string> check_field_assumptions(const FieldPtr& f, bool particle_frame) {
    std::vector<std::string> warnings;
    for (const auto& c : f->curves()) {
        if (particle_frame) {
            if (!c.vertical && c.shape == DiscontinuityCurve::Shape::line_segment) {
                if (c.slope == 0.0)
                    warnings.push_back("horizontal discontinuity curve (excluded by the "
                                       "particle-frame curve assumptions)");
                if (c.slope == -1.0)
                    warnings.push_back("discontinuity curve of slope -1 in the particle frame");
                if (c.slope > -1.0 && c.slope < 0.0)
                    warnings.push_back("discontinuity slope in (-1,0): strong spatial-only "
                                       "assumptions do not hold");
            }
        } else {
            if (c.vertical)
                warnings.push_back("vertical discontinuity curve in the LPP frame");
            if (!c.vertical && c.shape == DiscontinuityCurve::Shape::line_segment &&
                c.slope == 0.0)
                warnings.push_back("horizontal discontinuity curve in the LPP frame");
        }
    }
    auto growth = f->growth_probe({0.0, 0.0}, 10);
    for (size_t k = 1; k < growth.size(); ++k)
        if (growth[k].second > growth[k - 1].second + 1e-12) {
            warnings.push_back("sup c / log(side) not decreasing along doubling squares");
            break;
        }
    return warnings;
}

} // namespace th
