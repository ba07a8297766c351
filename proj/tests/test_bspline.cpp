#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "toolfit/bspline.hpp"
#include "toolfit/errors.hpp"

using namespace toolfit;

namespace {

KnotVector unit_segment_knots() { return KnotVector::segment_form(0.0, 1.0); }

std::vector<double> to_vector(const KnotVector& kv) {
    return {kv.values().begin(), kv.values().end()};
}

} // namespace

TEST_CASE("knot vector validation") {
    CHECK_THROWS_AS(KnotVector({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(KnotVector({0.5}), std::invalid_argument);
    KnotVector kv = unit_segment_knots();
    CHECK(kv.size() == 10);
    CHECK(kv[4] == doctest::Approx(1.0 / 3.0));
    CHECK(kv[5] == doctest::Approx(2.0 / 3.0));
    CHECK(kv.basis_count(3) == 6);
}

TEST_CASE("partition of unity over the segment form") {
    KnotVector kv = unit_segment_knots();
    for (double t : {0.0, 0.17, 0.5, 0.83, 1.0}) {
        double sum = 0.0;
        for (int i = 0; i < 6; ++i) sum += basis_eval(kv, i, 3, t);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
        double t = uni(rng);
        double sum = 0.0;
        for (int i = 0; i < 6; ++i) sum += basis_eval(kv, i, 3, t);
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("clamped end conditions") {
    KnotVector kv = unit_segment_knots();
    CHECK(basis_eval(kv, 0, 3, 0.0) == 1.0);
    CHECK(basis_eval(kv, 5, 3, 1.0) == 1.0); // last basis is 1 at the right end
    for (int i = 1; i < 6; ++i) CHECK(basis_eval(kv, i, 3, 0.0) == 0.0);
    for (int i = 0; i < 5; ++i) CHECK(basis_eval(kv, i, 3, 1.0) == 0.0);
}

TEST_CASE("interior basis value frozen from the naive recursion") {
    // oracle: naive Cox-de Boor evaluated first; N_{2,3}(1/3) = 7/12
    KnotVector kv = unit_segment_knots();
    CHECK(basis_eval(kv, 2, 3, 1.0 / 3.0) == doctest::Approx(7.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("basis matches naive recursion on random clamped vectors") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        int degree = 1 + static_cast<int>(rng() % 3);
        int interior = static_cast<int>(rng() % 4);
        std::vector<double> knots(degree + 1, 0.0);
        std::vector<double> mids;
        for (int i = 0; i < interior; ++i) mids.push_back(uni(rng));
        std::sort(mids.begin(), mids.end());
        knots.insert(knots.end(), mids.begin(), mids.end());
        knots.insert(knots.end(), degree + 1, 1.0);
        KnotVector kv{knots};
        int n = kv.basis_count(degree);
        for (int s = 0; s <= 40; ++s) {
            double t = s / 40.0;
            for (int i = 0; i < n; ++i) {
                double got = basis_eval(kv, i, degree, t);
                double want = oracles::naive_basis(knots, i, degree, t);
                CHECK(got == doctest::Approx(want).epsilon(1e-13));
                CHECK(got >= 0.0);
            }
        }
    }
}

TEST_CASE("local support of the segment-form basis") {
    KnotVector kv = unit_segment_knots();
    // N_0 is supported on [0, 1/3]; N_5 on [2/3, 1]
    CHECK(basis_eval(kv, 0, 3, 0.5) == 0.0);
    CHECK(basis_eval(kv, 5, 3, 0.3) == 0.0);
    CHECK(basis_eval(kv, 0, 3, 0.2) > 0.0);
}

TEST_CASE("basis errors") {
    KnotVector kv = unit_segment_knots();
    CHECK_THROWS_AS(basis_eval(kv, 6, 3, 0.5), std::out_of_range);
    CHECK_THROWS_AS(basis_eval(kv, -1, 3, 0.5), std::out_of_range);
    CHECK_THROWS_AS(basis_eval(kv, 0, 3, 1.5), DomainError);
    CHECK_THROWS_AS(basis_eval(kv, 0, 3, -0.1), DomainError);
}

TEST_CASE("constant and linear reproduction") {
    KnotVector kv = unit_segment_knots();
    SegmentSpline constant(kv, {{4.5, 4.5, 4.5, 4.5, 4.5, 4.5}});
    for (double t : {0.0, 0.31, 0.77, 1.0}) CHECK(constant.eval(t, 0, 0) == doctest::Approx(4.5));

    // Greville coefficients of the segment form reproduce the identity
    SegmentSpline linear(kv, {{0.0, 1.0 / 9.0, 1.0 / 3.0, 2.0 / 3.0, 8.0 / 9.0, 1.0}});
    CHECK(linear.eval(0.37, 0, 0) == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(linear.eval(0.0, 0, 0) == 0.0);
    CHECK(linear.eval(1.0, 0, 0) == 1.0);
}

TEST_CASE("endpoint values equal the first and last coefficients") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    KnotVector kv = KnotVector::segment_form(2.0, 4.5);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> c(6);
        for (double& v : c) v = uni(rng);
        SegmentSpline seg(kv, {c});
        CHECK(seg.eval(2.0, 0, 0) == doctest::Approx(c.front()).epsilon(1e-14));
        CHECK(seg.eval(4.5, 0, 0) == doctest::Approx(c.back()).epsilon(1e-14));
    }
}

TEST_CASE("derivatives agree with finite differences") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<double> c(6);
    for (double& v : c) v = uni(rng);
    SegmentSpline seg(KnotVector::segment_form(0.0, 2.0), {c});

    const double h = 1e-6;
    for (int s = 1; s < 100; ++s) {
        double t = 2.0 * s / 100.0;
        if (t - h < 0.0 || t + h > 2.0) continue;
        double fd1 = oracles::central_diff([&](double x) { return seg.eval(x, 0, 0); }, t, h);
        double d1 = seg.eval(t, 0, 1);
        CHECK(std::abs(d1 - fd1) <= 1e-6 * std::max(1.0, std::abs(d1)));
        double fd2 = oracles::central_diff([&](double x) { return seg.eval(x, 0, 1); }, t, h);
        double d2 = seg.eval(t, 0, 2);
        CHECK(std::abs(d2 - fd2) <= 1e-6 * std::max(1.0, std::abs(d2)));
    }
}

TEST_CASE("second derivative is continuous across interior knots") {
    // b'' is linear on each span, so one-sided limits extrapolate exactly
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> c(6);
        for (double& v : c) v = uni(rng);
        SegmentSpline seg(KnotVector::segment_form(0.0, 1.0), {c});
        for (double knot : {1.0 / 3.0, 2.0 / 3.0}) {
            double eps = 1e-3;
            double left = 2.0 * seg.eval(knot - eps, 0, 2) - seg.eval(knot - 2 * eps, 0, 2);
            double right = 2.0 * seg.eval(knot + eps, 0, 2) - seg.eval(knot + 2 * eps, 0, 2);
            double at = seg.eval(knot, 0, 2);
            CHECK(std::abs(left - right) <= 1e-10 * std::max(1.0, std::abs(at)));
            CHECK(std::abs(left - at) <= 1e-10 * std::max(1.0, std::abs(at)));
        }
    }
}

TEST_CASE("cubic segment of t^3 has the right second derivative") {
    // coefficients for f(t) = t^3: (0, 0, 0, 2/9, 2/3, 1)
    SegmentSpline seg(unit_segment_knots(), {{0.0, 0.0, 0.0, 2.0 / 9.0, 2.0 / 3.0, 1.0}});
    CHECK(seg.eval(1.0 / 3.0, 0, 2) == doctest::Approx(2.0).epsilon(1e-12));
    for (double t : {0.1, 0.4, 0.9})
        CHECK(seg.eval(t, 0, 0) == doctest::Approx(t * t * t).epsilon(1e-13));
}

TEST_CASE("unsupported order and domain errors in curve evaluation") {
    SegmentSpline seg(unit_segment_knots(), {{0, 0, 0, 1, 1, 1}});
    CHECK_THROWS_AS(seg.eval(0.5, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(seg.eval(1.5, 0, 0), DomainError);
}

TEST_CASE("trimmed knot vectors follow the reduced-vector scheme") {
    KnotVector kv = unit_segment_knots();
    KnotVector u1 = kv.trimmed();
    CHECK(to_vector(u1) == std::vector<double>{0, 0, 0, 1.0 / 3.0, 2.0 / 3.0, 1, 1, 1});
    KnotVector u2 = u1.trimmed();
    CHECK(to_vector(u2) == std::vector<double>{0, 0, 1.0 / 3.0, 2.0 / 3.0, 1, 1});
}
