#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/shape.hpp"
#include "core/speed_field.hpp"

using namespace th;

namespace {

// min over a tiny neighbourhood: every sample sits at a continuity point of
// the lower-speed side, the numerical analogue of restricting paths to
// continuity points
class NudgedField final : public SpeedField {
  public:
    NudgedField(FieldPtr base, double delta) : base_(std::move(base)), d_(delta) {}
    double value(double x, double y) const override {
        double v = base_->value(x, y);
        v = std::min(v, base_->value(x + d_, y));
        v = std::min(v, base_->value(x - d_, y));
        v = std::min(v, base_->value(x, y + d_));
        v = std::min(v, base_->value(x, y - d_));
        return v;
    }
    std::string describe() const override { return "nudged(" + base_->describe() + ")"; }

  private:
    FieldPtr base_;
    double d_;
};

// exact line integral of gamma(dir)/c along [p, q] by dense sampling
double segment_value(const FieldPtr& c, Point p, Point q, int samples = 4000) {
    double acc = 0.0;
    for (int r = 0; r < samples; ++r) {
        double f = (r + 0.5) / samples;
        acc += 1.0 / c->value(p.x + f * (q.x - p.x), p.y + f * (q.y - p.y));
    }
    return gamma_shape(q.x - p.x, q.y - p.y) * acc / samples;
}

// best two-segment piecewise-linear path (0,0) -> m -> target
double two_segment_oracle(const FieldPtr& c, Point target) {
    double best = segment_value(c, {0, 0}, target);
    const int k = 48;
    for (int i = 0; i <= k; ++i) {
        for (int j = 0; j <= k; ++j) {
            Point m{target.x * i / k, target.y * j / k};
            best = std::max(best, segment_value(c, {0, 0}, m) + segment_value(c, m, target));
        }
    }
    return best;
}

} // namespace

TEST_CASE("gamma closed form") {
    CHECK(gamma_shape(1, 1) == 4.0);
    CHECK(gamma_shape(2, 0) == 2.0);
    CHECK(gamma_shape(4, 1) == 9.0);
    CHECK_THROWS_AS(gamma_shape(-1, 0), th::error);
}

TEST_CASE("psi branches") {
    CHECK(psi_dual(0.0) == 0.25);
    CHECK(psi_dual(-2.0) == 2.0);
    CHECK(psi_dual(1.0) == 0.0);
    CHECK(psi_dual(3.0) == 0.0);
    CHECK(psi_dual(-1.0) == 1.0);
}

TEST_CASE("level-set identity gamma(x+psi, psi) = 1 to 1e-12") {
    for (int k = 0; k <= 200; ++k) {
        double x = -1.0 + 2.0 * k / 200.0;
        double p = psi_dual(x);
        CHECK(std::fabs(gamma_shape(x + p, p) - 1.0) <= 1e-12);
    }
}

TEST_CASE("homogeneous grid matches the closed form at (1,1)") {
    ValueGrid grid(make_constant(1.0), {0, 0}, 1.0, 1.0, 1.0 / 200);
    CHECK(grid.at(200, 200) == doctest::Approx(4.0).epsilon(0.02));
    CHECK(grid.at(200, 200) == doctest::Approx(4.0).epsilon(1e-9)); // launch makes it exact
}

TEST_CASE("constant factor scales values exactly (dyadic constants)") {
    double h = 1.0 / 40;
    ValueGrid g1(make_constant(1.0), {0, 0}, 1.0, 1.0, h);
    ValueGrid g2(make_constant(2.0), {0, 0}, 1.0, 1.0, h);
    for (int j = 0; j <= g1.ny(); j += 7)
        for (int i = 0; i <= g1.nx(); i += 7) {
            if (i == 0 && j == 0) continue;
            REQUIRE(g2.at(i, j) == 0.5 * g1.at(i, j));
        }
}

TEST_CASE("grid values are nondecreasing along both axes") {
    ValueGrid grid(make_xstep(0.5, 1.0, 3.0), {0, 0}, 1.5, 1.0, 1.0 / 32);
    for (int j = 0; j <= grid.ny(); ++j)
        for (int i = 1; i <= grid.nx(); ++i) REQUIRE(grid.at(i, j) >= grid.at(i - 1, j));
    for (int i = 0; i <= grid.nx(); ++i)
        for (int j = 1; j <= grid.ny(); ++j) REQUIRE(grid.at(i, j) >= grid.at(i, j - 1));
}

TEST_CASE("two-phase grid dominates the two-segment path oracle") {
    auto c = make_xstep(0.6, 3.0, 1.0); // slow region to the right
    double h = 1.0 / 64;
    ValueGrid grid(c, {0, 0}, 1.5, 1.0, h);
    for (Point target : {Point{1.5, 1.0}, Point{1.2, 0.8}, Point{1.5, 0.4}}) {
        double oracle = two_segment_oracle(c, target);
        double dp = grid.value_rel(target.x, target.y);
        CHECK(dp >= oracle - 0.02);
    }
}

TEST_CASE("shift identity: shifted field from zero equals original from (a,b)") {
    auto c = make_oblique_step(2.0, -0.3, 1.0, 2.5);
    double a = 0.4, b = 0.2, h = 1.0 / 48;
    auto shifted = shift(c, a, b);
    for (Point rel : {Point{0.8, 0.6}, Point{1.2, 0.3}}) {
        double lhs = shape_value(shifted, {0, 0}, rel, h);
        double rhs = shape_value(c, {a, b}, {a + rel.x, b + rel.y}, h);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("superadditivity on grid triples up to eps(h)") {
    auto c = make_xstep(0.5, 1.0, 2.0);
    double h = 1.0 / 48;
    ValueGrid grid(c, {0, 0}, 1.5, 1.5, h);
    uint64_t s = 11;
    int checked = 0;
    for (int k = 0; k < 300; ++k) {
        int vi = 1 + static_cast<int>(rng::u01(rng::key(s, 3, k, 0, 0)) * (grid.nx() - 2));
        int vj = 1 + static_cast<int>(rng::u01(rng::key(s, 3, k, 1, 0)) * (grid.ny() - 2));
        int wi = vi + static_cast<int>(rng::u01(rng::key(s, 3, k, 2, 0)) * (grid.nx() - vi));
        int wj = vj + static_cast<int>(rng::u01(rng::key(s, 3, k, 3, 0)) * (grid.ny() - vj));
        // second leg from the midpoint needs its own grid
        ValueGrid leg(c, {vi * h, vj * h}, (wi - vi) * h + h, (wj - vj) * h + h, h);
        double lhs = grid.at(wi, wj);
        double rhs = grid.at(vi, vj) + leg.at(wi - vi, wj - vj);
        REQUIRE(lhs >= rhs - 0.05); // eps(h) slack
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("midpoint nudging toward the lower-speed side changes Gamma by at most eps(h)") {
    auto c = make_oblique_step(2.0, 0.0, 1.0, 4.0);
    double h = 1.0 / 64;
    auto nudged = std::make_shared<NudgedField>(c, h / 10.0);
    ValueGrid g0(c, {0, 0}, 1.0, 1.0, h);
    ValueGrid g1(nudged, {0, 0}, 1.0, 1.0, h);
    double worst = 0.0;
    for (int j = 0; j <= g0.ny(); j += 4)
        for (int i = 0; i <= g0.nx(); i += 4)
            worst = std::max(worst, std::fabs(g0.at(i, j) - g1.at(i, j)));
    CHECK(worst <= 0.05);
}

TEST_CASE("refinement: enlarging the move set never decreases values") {
    auto c = make_xstep(0.4, 1.0, 2.0);
    double h = 1.0 / 32;
    ShapeOptions small, big;
    small.max_slope = 4;
    big.max_slope = 8;
    small.origin_launch = big.origin_launch = false;
    small.axis_launches = big.axis_launches = false;
    ValueGrid gs(c, {0, 0}, 1.0, 1.0, h, small);
    ValueGrid gb(c, {0, 0}, 1.0, 1.0, h, big);
    for (int j = 0; j <= gs.ny(); j += 3)
        for (int i = 0; i <= gs.nx(); i += 3) REQUIRE(gb.at(i, j) >= gs.at(i, j) - 1e-12);
}

TEST_CASE("wedge-frame route agrees with the corner route") {
    auto c = make_xstep(0.5, 1.0, 2.0);
    auto ct = shear(c);
    double h = 1.0 / 48;
    for (auto [x, y] : {std::pair{0.4, 0.5}, {-0.3, 0.6}, {0.8, 0.3}}) {
        double corner = shape_value(c, {0, 0}, {x + y, y}, h);
        double wedge = wedge_shape_value(ct, 0.0, 0.0, x, y, h);
        CHECK(wedge == doctest::Approx(corner).epsilon(0.03));
    }
}

TEST_CASE("value_rel reproduces node values") {
    ValueGrid grid(make_bump(2.0, 0.5, 2.0, 2.0), {0, 0}, 1.0, 1.0, 1.0 / 24);
    for (int j = 1; j < grid.ny(); j += 5)
        for (int i = 1; i < grid.nx(); i += 5)
            REQUIRE(grid.value_rel(i / 24.0, j / 24.0) ==
                    doctest::Approx(grid.at(i, j)).epsilon(1e-12));
}

TEST_CASE("shape_value rejects non-dominated endpoints") {
    CHECK_THROWS_AS(shape_value(make_constant(1.0), {0, 0}, {-1.0, 0.5}, 0.05), th::error);
}

TEST_CASE("refinement: values are Cauchy under h -> h/2") {
    auto c = make_xstep(0.4, 1.0, 3.0);
    std::vector<Point> probes{{1.0, 0.7}, {0.6, 1.0}, {1.2, 0.3}};
    double prev_gap = 1e300;
    double older = 0.0;
    for (int level = 0; level < 3; ++level) {
        double h = 1.0 / (16 << level);
        ValueGrid grid(c, {0, 0}, 1.3, 1.1, h);
        double now = 0.0;
        for (Point p : probes) now += grid.value_rel(p.x, p.y);
        if (level > 0) {
            double gap = std::fabs(now - older);
            CHECK(gap <= prev_gap + 1e-4);
            prev_gap = gap;
        }
        older = now;
    }
    CHECK(prev_gap <= 0.04);
}
