#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/speed_field.hpp"

using namespace th;

namespace {

// test-only field with a triple point at the origin: 1 below the x-axis,
// 2 in the upper-left quadrant, 5 in the upper-right
class TripleField final : public SpeedField {
  public:
    double value(double x, double y) const override {
        bool on_h = std::fabs(y) <= kCurveTol;
        bool on_v = std::fabs(x) <= kCurveTol && y >= -kCurveTol;
        if (on_h && on_v) return 1.0;
        if (on_h) return x < 0 ? std::min(1.0, 2.0) : std::min(1.0, 5.0);
        if (y < 0) return 1.0;
        if (on_v) return 2.0;
        return x < 0 ? 2.0 : 5.0;
    }
    std::string describe() const override { return "triple"; }
};

} // namespace

TEST_CASE("eval: constant field") {
    auto f = make_constant(2.0);
    CHECK(f->eval({0.3, 1.7}) == 2.0);
    CHECK(f->kind() == SpeedField::Kind::constant);
}

TEST_CASE("eval: two-phase spatial field takes the lower one-sided limit on the curve") {
    auto f = make_xstep(0.0, 1.0, 3.0);
    CHECK(f->eval({-0.5, 5.0}) == 1.0);
    CHECK(f->eval({0.5, 5.0}) == 3.0);
    CHECK(f->eval({0.0, 5.0}) == 1.0);
}

TEST_CASE("eval: oblique step on the curve equals the min of the one-sided limits") {
    auto f = make_oblique_step(2.0, 0.0, 1.0, 4.0);
    // derive the expected on-curve value by probing along the normal
    double nx = -2.0 / std::sqrt(5.0), ny = 1.0 / std::sqrt(5.0);
    double lim_above = f->eval({1.0 + 1e-7 * nx, 2.0 + 1e-7 * ny});
    double lim_below = f->eval({1.0 - 1e-7 * nx, 2.0 - 1e-7 * ny});
    CHECK(lim_above == 4.0);
    CHECK(lim_below == 1.0);
    CHECK(f->eval({1.0, 2.0}) == std::min(lim_above, lim_below));
}

TEST_CASE("shear: constants are invariant") {
    auto f = make_constant(1.0);
    auto sf = shear(f);
    CHECK(sf->eval({10.0, -3.0}) == 1.0);
}

TEST_CASE("shear: vertical step u=0 becomes a step across x+y=0") {
    auto f = make_xstep(0.0, 1.0, 3.0);
    auto sf = shear(f);
    // substitute u = x + y in the curve equation
    CHECK(sf->eval({1.0, -2.0}) == 1.0); // x+y = -1 < 0
    CHECK(sf->eval({1.0, 0.5}) == 3.0);  // x+y = 1.5 > 0
    CHECK(sf->eval({2.0, -2.0}) == 1.0); // on the sheared curve: lsc side
    auto curves = sf->curves();
    REQUIRE(curves.size() == 1);
    CHECK(!curves[0].vertical);
    CHECK(curves[0].slope == doctest::Approx(-1.0));
}

TEST_CASE("shear: 45-degree step maps to a vertical step at x=0") {
    // c -> below the line y = u has speed 1, above has 2; u = y maps to x = 0,
    // and the below-side region {y < u} is {x > 0} after the shear
    auto f = make_oblique_step(1.0, 0.0, 1.0, 2.0);
    auto sf = shear(f);
    for (double yy : {-1.0, 0.3, 2.0}) {
        CHECK(sf->eval({-0.5, yy}) == 2.0);
        CHECK(sf->eval({0.5, yy}) == 1.0);
    }
    auto curves = sf->curves();
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].vertical);
    CHECK(curves[0].intercept == doctest::Approx(0.0));
}

TEST_CASE("shear consistency: eval(shear(f), (x,y)) == eval(f, (x+y,y)) exactly") {
    auto f = make_tabulated({-2.0, -1.0, 0.5, 2.0}, {-1.5, -0.2, 0.4, 3.0}, 0.7, 2.5);
    auto sf = shear(f);
    for (int k = 0; k < 10000; ++k) {
        double x = 8.0 * rng::u01(rng::key(42, 1, k, 0, 0)) - 4.0;
        double y = 8.0 * rng::u01(rng::key(42, 1, k, 1, 0)) - 4.0;
        REQUIRE(sf->value(x, y) == f->value(x + y, y));
    }
}

TEST_CASE("shear then unshear is the identity on evaluations") {
    auto f = make_oblique_step(0.7, 0.2, 1.0, 2.0);
    auto rt = unshear(shear(f));
    for (int k = 0; k < 10000; ++k) {
        double x = 8.0 * rng::u01(rng::key(7, 2, k, 0, 0)) - 4.0;
        double y = 8.0 * rng::u01(rng::key(7, 2, k, 1, 0)) - 4.0;
        REQUIRE(rt->value(x, y) == f->value(x, y));
    }
}

TEST_CASE("envelopes: continuity point") {
    auto f = make_bump(2.0, 1.0, 1.0, 1.0);
    auto [lo, hi] = f->envelopes({0.4, 0.9});
    CHECK(lo == f->eval({0.4, 0.9}));
    CHECK(hi == lo);
}

TEST_CASE("envelopes: two-phase jump") {
    auto f = make_xstep(0.0, 1.0, 3.0);
    auto [lo, hi] = f->envelopes({0.0, 2.0});
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(3.0));
    CHECK(lo == f->eval({0.0, 2.0})); // lsc: liminf equals the value
}

TEST_CASE("envelopes: triple point sees min and max over adjacent regions") {
    TripleField f;
    auto [lo, hi] = f.envelopes({0.0, 0.0});
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(5.0));
}

TEST_CASE("bounds_on: constants and steps") {
    auto f = make_constant(2.0);
    auto [lo, hi] = f->bounds_on({-3.0, 1.0, 4.0, 2.0});
    CHECK(lo == 2.0);
    CHECK(hi == 2.0);

    auto g = make_xstep(0.0, 1.0, 3.0);
    auto [glo, ghi] = g->bounds_on({-1.0, 0.0, 1.0, 1.0});
    CHECK(glo == 1.0);
    CHECK(ghi == 3.0);
}

TEST_CASE("bounds_on: smooth bump to 1e-6") {
    auto f = make_bump(2.0, 1.0, 1.0, 1.0);
    auto [lo, hi] = f->bounds_on({0.0, 0.0, M_PI, M_PI});
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(hi == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("bounds_on: negative extent is an error, zero extent is fine") {
    auto f = make_constant(1.0);
    CHECK_THROWS_AS((void)f->bounds_on({1.0, 0.0, 0.0, 1.0}), th::error);
    auto [lo, hi] = f->bounds_on({0.5, 0.5, 0.5, 0.5});
    CHECK(lo == 1.0);
    CHECK(hi == 1.0);
}

TEST_CASE("growth probe: sup c / log(side) decreases along doubling squares") {
    for (auto f : {make_constant(2.0), make_xstep(0.0, 1.0, 3.0),
                   make_bump(2.0, 1.0, 1.0, 1.0)}) {
        auto rows = f->growth_probe({0.0, 0.0}, 12);
        for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].second <= rows[k - 1].second + 1e-12);
    }
}

TEST_CASE("parser: families, defaults and failure modes") {
    auto f = parse_speed_field("family = xstep\nleft = 1\nright = 3\n");
    CHECK(f->eval({-1.0, 0.0}) == 1.0);
    CHECK(f->eval({1.0, 0.0}) == 3.0);

    auto g = parse_speed_field("# comment\nfamily = constant\nvalue = 2.5\n");
    CHECK(g->eval({0.0, 0.0}) == 2.5);

    auto tb = parse_speed_field(
        "family = tabulated\nxs = -1,0,1\nys = -1,0.2,1.5\nbelow = 1\nabove = 2\n");
    CHECK(tb->eval({0.0, -5.0}) == 1.0);
    CHECK(tb->eval({0.0, 5.0}) == 2.0);

    CHECK_THROWS_AS(parse_speed_field("family = nosuch\n"), th::error);
    CHECK_THROWS_AS(parse_speed_field("value = 1\n"), th::error);
    CHECK_THROWS_AS(parse_speed_field("family = constant\nvalue = bogus\n"), th::error);
    CHECK_THROWS_AS(parse_speed_field("family = constant\nvalue = -1\n"), th::error);
}

TEST_CASE("assumption probe flags bad particle-frame slopes") {
    auto bad = make_oblique_step(-0.5, 0.0, 1.0, 2.0);
    auto warnings = check_field_assumptions(bad, true);
    CHECK(!warnings.empty());
    auto ok = make_xstep(0.0, 1.0, 3.0);
    CHECK(check_field_assumptions(ok, true).empty());
}

TEST_CASE("rect checker alternates and keeps the min on cell walls") {
    auto f = make_rect_checker(1.0, 1.0, 0.0, 0.0, 1.0, 2.0);
    CHECK(f->eval({0.5, 0.5}) == 1.0);
    CHECK(f->eval({1.5, 0.5}) == 2.0);
    CHECK(f->eval({1.5, 1.5}) == 1.0);
    CHECK(f->eval({1.0, 0.5}) == 1.0);
}
