#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "toolfit/hermite.hpp"

using namespace toolfit;

namespace {

HermiteEndData random_end_data(std::mt19937& rng, double span = 5.0) {
    std::uniform_real_distribution<double> uni(-span, span);
    return {uni(rng), uni(rng), uni(rng), uni(rng), uni(rng), uni(rng)};
}

SegmentSpline unit_segment(const HermiteEndData& d) {
    auto lambda = unit_coefficients(d);
    return SegmentSpline(KnotVector::segment_form(0.0, 1.0),
                         {{lambda.begin(), lambda.end()}});
}

} // namespace

TEST_CASE("unit coefficients: constant, identity, cubic") {
    auto constant = unit_coefficients({1, 0, 0, 1, 0, 0});
    for (double l : constant) CHECK(l == 1.0);

    auto identity = unit_coefficients({0, 1, 0, 1, 1, 0});
    CHECK(identity[0] == 0.0);
    CHECK(identity[1] == doctest::Approx(1.0 / 9.0));
    CHECK(identity[2] == doctest::Approx(1.0 / 3.0));
    CHECK(identity[3] == doctest::Approx(2.0 / 3.0));
    CHECK(identity[4] == doctest::Approx(8.0 / 9.0));
    CHECK(identity[5] == 1.0);

    // f(t) = t^3: data (0,0,0,1,3,6)
    auto cubic = unit_coefficients({0, 0, 0, 1, 3, 6});
    CHECK(cubic[0] == 0.0);
    CHECK(cubic[1] == 0.0);
    CHECK(cubic[2] == 0.0);
    CHECK(cubic[3] == doctest::Approx(2.0 / 9.0));
    CHECK(cubic[4] == doctest::Approx(2.0 / 3.0));
    CHECK(cubic[5] == 1.0);
    SegmentSpline seg = unit_segment({0, 0, 0, 1, 3, 6});
    for (int i = 0; i <= 200; ++i) {
        double t = i / 200.0;
        CHECK(seg.eval(t, 0, 0) == doctest::Approx(t * t * t).epsilon(1e-12));
    }
}

TEST_CASE("unit coefficients are linear in the data") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        HermiteEndData a = random_end_data(rng), b = random_end_data(rng);
        double s = uni(rng), w = uni(rng);
        HermiteEndData mix{s * a.f00 + w * b.f00, s * a.f01 + w * b.f01,
                           s * a.f02 + w * b.f02, s * a.f10 + w * b.f10,
                           s * a.f11 + w * b.f11, s * a.f12 + w * b.f12};
        auto la = unit_coefficients(a);
        auto lb = unit_coefficients(b);
        auto lm = unit_coefficients(mix);
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(lm[i] - (s * la[i] + w * lb[i])) <=
                  1e-12 * std::max(1.0, std::abs(lm[i])));
    }
}

TEST_CASE("constructed segment meets all six endpoint conditions") {
    std::mt19937 rng(43);
    for (int rep = 0; rep < 100; ++rep) {
        HermiteEndData d = random_end_data(rng);
        SegmentSpline seg = unit_segment(d);
        double want[2][3] = {{d.f00, d.f01, d.f02}, {d.f10, d.f11, d.f12}};
        for (int end = 0; end < 2; ++end)
            for (int k = 0; k <= 2; ++k) {
                double got = seg.eval(static_cast<double>(end), 0, k);
                CHECK(std::abs(got - want[end][k]) <=
                      1e-9 * std::max(1.0, std::abs(want[end][k])));
            }
    }
}

TEST_CASE("uniqueness: coefficients reconstruct from endpoint derivatives") {
    std::mt19937 rng(47);
    for (int rep = 0; rep < 50; ++rep) {
        HermiteEndData d = random_end_data(rng);
        SegmentSpline seg = unit_segment(d);
        HermiteEndData back{seg.eval(0, 0, 0), seg.eval(0, 0, 1), seg.eval(0, 0, 2),
                            seg.eval(1, 0, 0), seg.eval(1, 0, 1), seg.eval(1, 0, 2)};
        auto original = unit_coefficients(d);
        auto rebuilt = unit_coefficients(back);
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(original[i] - rebuilt[i]) <=
                  1e-9 * std::max(1.0, std::abs(original[i])));
    }
}

TEST_CASE("interior second derivatives") {
    auto t3 = interior_second_derivatives({0, 0, 0, 1, 3, 6});
    CHECK(t3[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(t3[1] == doctest::Approx(4.0).epsilon(1e-14));

    auto flat = interior_second_derivatives({3.5, 0, 0, 3.5, 0, 0});
    CHECK(flat[0] == 0.0);
    CHECK(flat[1] == 0.0);

    std::mt19937 rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        HermiteEndData d = random_end_data(rng);
        auto inner = interior_second_derivatives(d);
        SegmentSpline seg = unit_segment(d);
        CHECK(std::abs(inner[0] - seg.eval(1.0 / 3.0, 0, 2)) <= 1e-10 *
                  std::max(1.0, std::abs(inner[0])));
        CHECK(std::abs(inner[1] - seg.eval(2.0 / 3.0, 0, 2)) <= 1e-10 *
                  std::max(1.0, std::abs(inner[1])));
    }
}

TEST_CASE("scale_to_unit") {
    PolynomialSource line({{0.0, 1.0}}, {0.0, 10.0}); // F(t) = t
    HermiteEndData d = scale_axis_to_unit(line, {2.0, 5.0}, 0);
    CHECK(d.f00 == 2.0);
    CHECK(d.f01 == 3.0);
    CHECK(d.f02 == 0.0);
    CHECK(d.f10 == 5.0);
    CHECK(d.f11 == 3.0);
    CHECK(d.f12 == 0.0);

    PolynomialSource square({{0.0, 0.0, 1.0}}, {-1.0, 3.0}); // F(t) = t^2
    HermiteEndData q = scale_axis_to_unit(square, {0.0, 2.0}, 0);
    CHECK(q.f00 == 0.0);
    CHECK(q.f01 == 0.0);
    CHECK(q.f02 == 8.0);
    CHECK(q.f10 == 4.0);
    CHECK(q.f11 == 8.0);
    CHECK(q.f12 == 8.0);

    PolynomialSource constant({{7.0}}, {0.0, 1.0});
    HermiteEndData c = scale_axis_to_unit(constant, {0.2, 0.9}, 0);
    CHECK(c.f00 == 7.0);
    CHECK(c.f01 == 0.0);
    CHECK(c.f02 == 0.0);
    CHECK(c.f10 == 7.0);

    CHECK_THROWS_AS(scale_axis_to_unit(line, {5.0, 2.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(scale_axis_to_unit(line, {3.0, 3.0}, 0), std::invalid_argument);
}

TEST_CASE("interp_segment reproduces cubics exactly") {
    // y = x^3 + 31 x^2 - 6 x + 119
    PolynomialSource cubic({{119.0, -6.0, 31.0, 1.0}}, {-5.0, 12.0});
    for (Interval iv : {Interval{0.0, 1.0}, Interval{-2.0, 3.0}, Interval{10.0, 10.5}}) {
        Interval used{std::max(iv.a, -5.0), std::min(iv.b, 12.0)};
        SegmentSpline seg = interp_segment(cubic, used);
        double scale = 1.0;
        for (int i = 0; i <= 500; ++i) {
            double t = used.a + used.length() * i / 500;
            scale = std::max(scale, std::abs(cubic.eval(t, 0, 0)));
        }
        double worst = oracles::max_deviation(cubic, seg, 2000);
        CHECK(worst <= 1e-9 * scale);
    }
}

TEST_CASE("interp_segment puts straight 2D segments on the line") {
    LineSource line({1.0, 2.0}, {4.0, -1.0});
    SegmentSpline seg = interp_segment(line, {0.0, 1.0});
    for (int i = 0; i <= 100; ++i) {
        double t = i / 100.0;
        double x = seg.eval(t, 0, 0);
        double y = seg.eval(t, 1, 0);
        // signed distance to the line through (1,2) and (4,-1)
        double dist = std::abs((x - 1.0) * (-3.0) - (y - 2.0) * 3.0) / std::hypot(3.0, -3.0);
        CHECK(dist <= 1e-12);
    }
}

TEST_CASE("interp_segment matches sin derivatives at the endpoints") {
    SineSource sine(1.0, 1.0, 0.0, {0.0, 1.0});
    SegmentSpline seg = interp_segment(sine, {0.0, 1.0});
    for (double end : {0.0, 1.0})
        for (int k = 0; k <= 2; ++k) {
            double want = sine.eval(end, 0, k);
            CHECK(std::abs(seg.eval(end, 0, k) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
}

TEST_CASE("cubic precision on random cubics and intervals") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> coeff(-4.0, 4.0);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> c{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        double a = pos(rng);
        double b = a + 0.25 + std::abs(pos(rng));
        PolynomialSource f({c}, {a - 1.0, b + 1.0});
        SegmentSpline seg = interp_segment(f, {a, b});
        double scale = 1.0;
        for (int i = 0; i <= 200; ++i)
            scale = std::max(scale, std::abs(f.eval(a + (b - a) * i / 200.0, 0, 0)));
        CHECK(oracles::max_deviation(f, seg, 500) <= 1e-9 * scale);
    }
}

TEST_CASE("data-form derivative curves agree with coefficient differencing") {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    std::uniform_real_distribution<double> pos(0.1, 3.0);
    for (int rep = 0; rep < 30; ++rep) {
        HermiteEndData d = random_end_data(rng);
        double a = uni(rng);
        double b = a + pos(rng);
        SegmentSpline exact = segment_from_end_data({a, b}, {d});
        SegmentSpline diffed(KnotVector::segment_form(a, b),
                             {std::vector<double>(exact.coeffs(0).begin(),
                                                  exact.coeffs(0).end())});
        for (int i = 0; i <= 40; ++i) {
            double t = a + (b - a) * i / 40.0;
            for (int order = 1; order <= 2; ++order) {
                double e = exact.eval(t, 0, order);
                double g = diffed.eval(t, 0, order);
                CHECK(std::abs(e - g) <= 1e-9 * std::max(1.0, std::abs(e)));
            }
        }
        CHECK(exact.end_scaled_data().size() == 1);
        CHECK(diffed.end_scaled_data().empty());
    }
}

TEST_CASE("general-interval coefficients equal the unit ones") {
    // only the knot vector rescales
    SineSource sine(2.0, 1.3, 0.4, {0.0, 10.0});
    Interval iv{1.5, 3.25};
    SegmentSpline seg = interp_segment(sine, iv);
    auto lambda = unit_coefficients(scale_axis_to_unit(sine, iv, 0));
    for (int i = 0; i < 6; ++i) CHECK(seg.coeffs(0)[i] == lambda[i]);
    CHECK(seg.knots()[0] == iv.a);
    CHECK(seg.knots()[9] == iv.b);
}
