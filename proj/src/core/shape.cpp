#include "shape.hpp"

#include <cmath>
#include <numeric>

#include "error.hpp"

namespace th {

double gamma_shape(double x, double y) {
    if (x < 0.0 && x > -1e-12) x = 0.0;
    if (y < 0.0 && y > -1e-12) y = 0.0;
    require(x >= 0.0 && y >= 0.0, errc::invalid_argument, "gamma_shape needs x,y >= 0");
    if (y == 0.0) return x; // exact on the axes
    if (x == 0.0) return y;
    double s = std::sqrt(x) + std::sqrt(y);
    return s * s;
}

double psi_dual(double y) {
    if (y < -1.0) return -y;
    if (y > 1.0) return 0.0;
    double u = 1.0 - y;
    return 0.25 * u * u;
}

std::vector<Move> build_move_set(int max_slope) {
    require(max_slope >= 1, errc::invalid_argument, "move set needs max_slope >= 1");
    std::vector<Move> moves;
    moves.push_back({1, 0, 1.0, {}});
    moves.push_back({0, 1, 1.0, {}});
    for (int a = 1; a <= max_slope; ++a)
        for (int b = 1; b <= max_slope; ++b)
            if (std::gcd(a, b) == 1) moves.push_back({a, b, gamma_shape(a, b), {}});
    // long nearly-axis moves: the square-root cross term of gamma makes the
    // value sensitive to shallow directions the compact set cannot mix
    for (int a : {max_slope + 4, 18, 27, 40, 60}) {
        if (a <= max_slope) continue;
        moves.push_back({a, 1, gamma_shape(a, 1), {}});
        moves.push_back({1, a, gamma_shape(1, a), {}});
    }
    return moves;
}

ValueGrid::ValueGrid(FieldPtr field, Point start, double width, double height, double h,
                     ShapeOptions opt)
    : field_(std::move(field)), start_(start), h_(h), opt_(opt) {
    require(h > 0.0, errc::invalid_argument, "grid spacing must be positive");
    require(width >= 0.0 && height >= 0.0, errc::invalid_argument,
            "grid extent must be nonnegative");
    nx_ = std::max(1, static_cast<int>(std::ceil(width / h - 1e-9)));
    ny_ = std::max(1, static_cast<int>(std::ceil(height / h - 1e-9)));
    rnx_ = 2 * static_cast<size_t>(nx_) + 1;
    rny_ = 2 * static_cast<size_t>(ny_) + 1;
    inv_c_.resize(rnx_ * rny_);
    const double hh = 0.5 * h_;
    for (size_t rj = 0; rj < rny_; ++rj)
        for (size_t ri = 0; ri < rnx_; ++ri)
            inv_c_[rj * rnx_ + ri] = static_cast<float>(
                1.0 / field_->value(start_.x + ri * hh, start_.y + rj * hh));

    for (const auto& c : field_->curves()) {
        if (c.shape != DiscontinuityCurve::Shape::line_segment) continue;
        LocalLine line;
        if (c.vertical) {
            line.vertical = true;
            line.m = 0.0;
            line.b = (c.intercept - start_.x) / h_;
        } else {
            line.vertical = false;
            line.m = c.slope;
            line.b = (c.slope * start_.x + c.intercept - start_.y) / h_;
        }
        lines_.push_back(line);
    }

    moves_ = build_move_set(opt_.max_slope);
    for (Move& m : moves_) {
        int len = std::max(m.a, m.b);
        int s = std::clamp((len + 1) / 2, 1, 16);
        m.raster_off.reserve(s);
        for (int r = 0; r < s; ++r) {
            double f = (r + 0.5) / s;
            int dx = static_cast<int>(std::lround(2.0 * m.a * f));
            int dy = static_cast<int>(std::lround(2.0 * m.b * f));
            m.raster_off.push_back(dy * static_cast<int>(rnx_) + dx);
        }
    }
    compute();
}

// mean of 1/c along [p0, p1] (grid units), integrating each region piece
// between discontinuity-line crossings separately so that a crossing move
// never smears the interface position
double ValueGrid::segment_mean_inv_c(double i0, double j0, double i1, double j1) const {
    double di = i1 - i0, dj = j1 - j0;
    double cuts[8];
    int n_cuts = 0;
    for (const auto& line : lines_) {
        double f;
        if (line.vertical) {
            if (std::fabs(di) < 1e-12) continue;
            f = (line.b - i0) / di;
        } else {
            double denom = dj - line.m * di;
            if (std::fabs(denom) < 1e-12) continue;
            f = (line.m * i0 + line.b - j0) / denom;
        }
        if (f > 1e-9 && f < 1.0 - 1e-9 && n_cuts < 8) cuts[n_cuts++] = f;
    }
    std::sort(cuts, cuts + n_cuts);
    const int max_ri = static_cast<int>(rnx_) - 1;
    const int max_rj = static_cast<int>(rny_) - 1;
    auto piece_mean = [&](double fa, double fb) {
        double len = std::max(std::fabs(di), std::fabs(dj)) * (fb - fa);
        int nsamp = std::clamp(static_cast<int>(std::ceil(len)), 1, opt_.max_launch_samples);
        double sum = 0.0;
        for (int r = 0; r < nsamp; ++r) {
            double f = fa + (fb - fa) * (r + 0.5) / nsamp;
            int ri = std::clamp(static_cast<int>(std::lround(2.0 * (i0 + f * di))), 0, max_ri);
            int rj = std::clamp(static_cast<int>(std::lround(2.0 * (j0 + f * dj))), 0, max_rj);
            sum += raster_at(ri, rj);
        }
        return sum / nsamp;
    };
    if (n_cuts == 0) return piece_mean(0.0, 1.0);
    double acc = 0.0, prev = 0.0;
    for (int k = 0; k <= n_cuts; ++k) {
        double next = k < n_cuts ? cuts[k] : 1.0;
        if (next > prev) acc += (next - prev) * piece_mean(prev, next);
        prev = next;
    }
    return acc;
}

bool ValueGrid::segment_crosses_line(double i0, double j0, double i1, double j1) const {
    for (const auto& line : lines_) {
        double s0, s1;
        if (line.vertical) {
            s0 = i0 - line.b;
            s1 = i1 - line.b;
        } else {
            s0 = j0 - (line.m * i0 + line.b);
            s1 = j1 - (line.m * i1 + line.b);
        }
        if ((s0 < 0 && s1 > 0) || (s0 > 0 && s1 < 0)) return true;
    }
    return false;
}

void ValueGrid::compute() {
    constexpr double ninf = -1e300;
    val_.assign(static_cast<size_t>(nx_ + 1) * (ny_ + 1), ninf);
    val_[idx(0, 0)] = 0.0;
    for (int j = 0; j <= ny_; ++j) {
        for (int i = 0; i <= nx_; ++i) {
            if (i == 0 && j == 0) continue;
            double best = ninf;
            const int src_base = 2 * j * static_cast<int>(rnx_) + 2 * i;
            for (const Move& m : moves_) {
                if (i < m.a || j < m.b) continue;
                double v0 = val_[idx(i - m.a, j - m.b)];
                if (v0 <= ninf) continue;
                double mean;
                if (!lines_.empty() && segment_crosses_line(i - m.a, j - m.b, i, j)) {
                    mean = segment_mean_inv_c(i - m.a, j - m.b, i, j);
                } else {
                    const int base = src_base - 2 * m.b * static_cast<int>(rnx_) - 2 * m.a;
                    double sum = 0.0;
                    for (int off : m.raster_off) sum += inv_c_[base + off];
                    mean = sum / m.raster_off.size();
                }
                double cand = v0 + m.gam * h_ * mean;
                if (cand > best) best = cand;
            }
            if (opt_.origin_launch) {
                double cand =
                    gamma_shape(i * h_, j * h_) * segment_mean_inv_c(0.0, 0.0, i, j);
                if (cand > best) best = cand;
            }
            if (opt_.axis_launches) {
                for (int back = 1; back <= i; back *= 2) {
                    int i0 = i - back;
                    double v0 = val_[idx(i0, 0)];
                    if (v0 > ninf) {
                        double cand = v0 + gamma_shape(back * h_, j * h_) *
                                               segment_mean_inv_c(i0, 0.0, i, j);
                        if (cand > best) best = cand;
                    }
                }
                for (int back = 1; back <= j; back *= 2) {
                    int j0 = j - back;
                    double v0 = val_[idx(0, j0)];
                    if (v0 > ninf) {
                        double cand = v0 + gamma_shape(i * h_, back * h_) *
                                               segment_mean_inv_c(0.0, j0, i, j);
                        if (cand > best) best = cand;
                    }
                }
            }
            val_[idx(i, j)] = best;
        }
    }
}

namespace {

inline double catmull_rom(double pm1, double p0, double p1, double p2, double t) {
    return p0 + 0.5 * t * (p1 - pm1 +
                           t * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2 +
                                t * (3.0 * (p0 - p1) + p2 - pm1)));
}

} // namespace

double ValueGrid::node_interp(int i, int j) const {
    // edge replication for interpolation stencils
    i = std::clamp(i, 0, nx_);
    j = std::clamp(j, 0, ny_);
    return val_[idx(i, j)];
}

double ValueGrid::value_interp(double u, double v) const {
    int i0 = std::min(static_cast<int>(u), nx_ - 1);
    int j0 = std::min(static_cast<int>(v), ny_ - 1);
    double fu = u - i0, fv = v - j0;
    double rows[4];
    for (int dj = -1; dj <= 2; ++dj) {
        rows[dj + 1] = catmull_rom(node_interp(i0 - 1, j0 + dj), node_interp(i0, j0 + dj),
                                   node_interp(i0 + 1, j0 + dj), node_interp(i0 + 2, j0 + dj),
                                   fu);
    }
    return catmull_rom(rows[0], rows[1], rows[2], rows[3], fv);
}

double ValueGrid::launch_cost(double i0, double j0, double u, double v) const {
    double best = gamma_shape((u - i0) * h_, (v - j0) * h_) * segment_mean_inv_c(i0, j0, u, v);
    // a straight segment cannot represent a refracted path: try one kink on
    // each discontinuity line the segment's bounding box meets
    for (const auto& line : lines_) {
        double s_lo, s_hi;
        if (line.vertical) {
            if (line.b < i0 - 1e-12 || line.b > u + 1e-12) continue;
            s_lo = j0;
            s_hi = v;
        } else if (std::fabs(line.m) < 1e-12) {
            continue; // horizontal: no admissible kink parameterization
        } else {
            double xa = (j0 - line.b) / line.m, xb = (v - line.b) / line.m;
            if (xa > xb) std::swap(xa, xb);
            s_lo = std::max(i0, xa);
            s_hi = std::min(u, xb);
            if (s_hi < s_lo) continue;
        }
        auto kink_val = [&](double s) {
            double kx = line.vertical ? line.b : s;
            double ky = line.vertical ? s : line.m * s + line.b;
            if (kx < i0 - 1e-9 || kx > u + 1e-9 || ky < j0 - 1e-9 || ky > v + 1e-9)
                return -1e300;
            return gamma_shape((kx - i0) * h_, (ky - j0) * h_) *
                       segment_mean_inv_c(i0, j0, kx, ky) +
                   gamma_shape((u - kx) * h_, (v - ky) * h_) * segment_mean_inv_c(kx, ky, u, v);
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = s_lo, b = s_hi;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = kink_val(c1), f2 = kink_val(c2);
        for (int it = 0; it < 10; ++it) {
            if (f1 < f2) {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + gr * (b - a);
                f2 = kink_val(c2);
            } else {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - gr * (b - a);
                f1 = kink_val(c1);
            }
        }
        best = std::max({best, f1, f2, kink_val(s_lo), kink_val(s_hi)});
    }
    return best;
}

double ValueGrid::value_update(double u, double v) const {
    double best = -1e300;
    int iu = static_cast<int>(u), jv = static_cast<int>(v);
    auto consider = [&](int i0, int j0) {
        double src = val_[idx(i0, j0)];
        double du = u - i0, dv = v - j0;
        double cand = src;
        if (du > 1e-12 || dv > 1e-12)
            cand += gamma_shape(du * h_, dv * h_) * segment_mean_inv_c(i0, j0, u, v);
        if (cand > best) best = cand;
    };
    for (int j0 = std::max(0, jv - opt_.max_slope); j0 <= jv; ++j0)
        for (int i0 = std::max(0, iu - opt_.max_slope); i0 <= iu; ++i0) consider(i0, j0);
    // geometric far nodes along the top rows and columns of the window keep
    // shallow/steep final approaches represented at every fractional offset;
    // their segments may cross discontinuity lines, so allow a kink
    auto consider_far = [&](int i0, int j0) {
        double cand = val_[idx(i0, j0)] + launch_cost(i0, j0, u, v);
        if (cand > best) best = cand;
    };
    for (int j0 = std::max(0, jv - 1); j0 <= jv; ++j0)
        for (int back = 2; back <= iu; back *= 2) consider_far(iu - back, j0);
    for (int i0 = std::max(0, iu - 1); i0 <= iu; ++i0)
        for (int back = 2; back <= jv; back *= 2) consider_far(i0, jv - back);
    if (opt_.origin_launch && (u > 0 || v > 0)) {
        double cand = launch_cost(0.0, 0.0, u, v);
        if (cand > best) best = cand;
    }
    for (int back = 1; back <= iu; back *= 2) {
        int i0 = iu - back;
        double cand = val_[idx(i0, 0)] + launch_cost(i0, 0.0, u, v);
        if (cand > best) best = cand;
    }
    for (int back = 1; back <= jv; back *= 2) {
        int j0 = jv - back;
        double cand = val_[idx(0, j0)] + launch_cost(0.0, j0, u, v);
        if (cand > best) best = cand;
    }
    return best;
}

double ValueGrid::value_rel(double rx, double ry) const {
    double u = rx / h_, v = ry / h_;
    require(u > -1e-6 && v > -1e-6 && u < nx_ + 1e-6 && v < ny_ + 1e-6,
            errc::invalid_argument, "value_rel query outside grid");
    u = std::clamp(u, 0.0, static_cast<double>(nx_));
    v = std::clamp(v, 0.0, static_cast<double>(ny_));
    // blend the two evaluations over a band so the routing seam stays
    // continuous; bisections would otherwise lock onto a jump there
    double m = std::min(u, v);
    if (m >= 4.0) return value_interp(u, v);
    if (m <= 3.0) return value_update(u, v);
    double w = m - 3.0;
    return (1.0 - w) * value_update(u, v) + w * value_interp(u, v);
}

double shape_value(const FieldPtr& field, Point start, Point end, double h, ShapeOptions opt) {
    Point rel = end - start;
    require(rel.x >= -1e-12 && rel.y >= -1e-12, errc::invalid_argument,
            "shape_value needs end >= start componentwise");
    rel.x = std::max(rel.x, 0.0);
    rel.y = std::max(rel.y, 0.0);
    ValueGrid grid(field, start, std::max(rel.x, h), std::max(rel.y, h), h, opt);
    return grid.value_rel(rel.x, rel.y);
}

double shape_shifted_q(const FieldPtr& field, double q, double v0q, Point rel, double h,
                       ShapeOptions opt) {
    return shape_value(field, {q - v0q, -v0q}, {q - v0q + rel.x, -v0q + rel.y}, h, opt);
}

double wedge_shape_value(const FieldPtr& c_tilde, double x_off, double y_off, double x,
                         double y, double h, int max_slope) {
    require(y >= 0.0 && x >= -y - 1e-12, errc::invalid_argument,
            "wedge query outside the wedge");
    int ny = std::max(1, static_cast<int>(std::ceil(y / h)));
    int ilo = -ny, ihi = std::max(1, static_cast<int>(std::ceil(x / h)) + 1);
    int nxw = ihi - ilo;
    // wedge move set: b >= 1, -b <= a <= max_slope (coprime), plus (1,0)
    struct WMove {
        int a, b;
        double gam;
    };
    std::vector<WMove> moves{{1, 0, 1.0}};
    for (int b = 1; b <= max_slope; ++b)
        for (int a = -b; a <= max_slope; ++a) {
            if (a == 0 && b != 1) continue;
            if (a != 0 && std::gcd(std::abs(a), b) != 1) continue;
            moves.push_back({a, b, gamma_shape((a + b) * h, b * h) / h});
        }
    constexpr double ninf = -1e300;
    std::vector<double> val(static_cast<size_t>(nxw + 1) * (ny + 1), ninf);
    auto id = [&](int i, int j) { return static_cast<size_t>(j) * (nxw + 1) + (i - ilo); };
    auto cvals = [&](double xi, double yj) {
        return c_tilde->value(x_off + xi, y_off + yj);
    };
    val[id(0, 0)] = 0.0;
    for (int j = 0; j <= ny; ++j) {
        for (int i = ilo; i <= ihi; ++i) {
            if (i == 0 && j == 0) continue;
            if (i * h < -j * h - 1e-12) continue; // outside the wedge
            double best = ninf;
            for (const auto& m : moves) {
                int pi = i - m.a, pj = j - m.b;
                if (pj < 0 || pi < ilo || pi > ihi) continue;
                if (pi * h < -pj * h - 1e-12) continue;
                double v0 = val[id(pi, pj)];
                if (v0 <= ninf) continue;
                int s = std::max(std::abs(m.a), m.b) + 1;
                double sum = 0.0;
                for (int r = 0; r < s; ++r) {
                    double f = (r + 0.5) / s;
                    sum += 1.0 / cvals((pi + f * m.a) * h, (pj + f * m.b) * h);
                }
                double cand = v0 + m.gam * h * (sum / s);
                if (cand > best) best = cand;
            }
            // straight launch from the wedge corner
            {
                double xi = i * h, yj = j * h;
                int s = std::clamp(static_cast<int>(std::ceil(std::max(std::fabs(xi), yj) / h)),
                                   1, 192);
                double sum = 0.0;
                for (int r = 0; r < s; ++r) {
                    double f = (r + 0.5) / s;
                    sum += 1.0 / cvals(f * xi, f * yj);
                }
                double cand = gamma_shape(xi + yj, yj) * (sum / s);
                if (cand > best) best = cand;
            }
            val[id(i, j)] = best;
        }
    }
    // bilinear read at the query (tests query near nodes)
    double u = x / h - ilo, v = y / h;
    int iu = std::clamp(static_cast<int>(u), 0, nxw - 1);
    int jv = std::clamp(static_cast<int>(v), 0, ny - 1);
    double fu = u - iu, fv = v - jv;
    auto vv = [&](int a, int b) { return val[static_cast<size_t>(b) * (nxw + 1) + a]; };
    double v00 = vv(iu, jv), v10 = vv(iu + 1, jv), v01 = vv(iu, jv + 1), v11 = vv(iu + 1, jv + 1);
    return (1 - fu) * (1 - fv) * v00 + fu * (1 - fv) * v10 + (1 - fu) * fv * v01 + fu * fv * v11;
}

} // namespace th
