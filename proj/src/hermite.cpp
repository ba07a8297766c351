#include "toolfit/hermite.hpp"

#include <stdexcept>

namespace toolfit {

std::array<double, 6> unit_coefficients(const HermiteEndData& d) {
    return {
        d.f00,
        d.f01 / 9.0 + d.f00,
        d.f02 / 27.0 + d.f01 / 3.0 + d.f00,
        d.f12 / 27.0 - d.f11 / 3.0 + d.f10,
        d.f10 - d.f11 / 9.0,
        d.f10,
    };
}

std::array<double, 2> interior_second_derivatives(const HermiteEndData& d) {
    double at_third = -9.0 * d.f00 - 6.0 * d.f01 - 5.0 / 6.0 * d.f02 //
                      + 9.0 * d.f10 - 3.0 * d.f11 + 1.0 / 3.0 * d.f12;
    double at_two_thirds = 9.0 * d.f00 + 3.0 * d.f01 + 1.0 / 3.0 * d.f02 //
                           - 9.0 * d.f10 + 6.0 * d.f11 - 5.0 / 6.0 * d.f12;
    return {at_third, at_two_thirds};
}

HermiteEndData scale_axis_to_unit(const CurveSource& source, Interval interval, int axis) {
    if (!(interval.a < interval.b))
        throw std::invalid_argument("degenerate interpolation interval");
    Interval full = source.domain();
    if (interval.a < full.a - 1e-12 || interval.b > full.b + 1e-12)
        throw std::invalid_argument("interpolation interval outside source domain");
    double delta = interval.length();
    HermiteEndData d;
    d.f00 = source.eval_sided(interval.a, axis, 0, Side::above);
    d.f01 = delta * source.eval_sided(interval.a, axis, 1, Side::above);
    d.f02 = delta * delta * source.eval_sided(interval.a, axis, 2, Side::above);
    d.f10 = source.eval_sided(interval.b, axis, 0, Side::below);
    d.f11 = delta * source.eval_sided(interval.b, axis, 1, Side::below);
    d.f12 = delta * delta * source.eval_sided(interval.b, axis, 2, Side::below);
    return d;
}

std::vector<HermiteEndData> scale_to_unit(const CurveSource& source, Interval interval) {
    std::vector<HermiteEndData> out;
    out.reserve(source.dim());
    for (int axis = 0; axis < source.dim(); ++axis)
        out.push_back(scale_axis_to_unit(source, interval, axis));
    return out;
}

std::pair<BSplineCurve, BSplineCurve> derivative_curves_from_end_data(
    Interval interval, const std::vector<HermiteEndData>& per_axis) {
    if (per_axis.empty() || per_axis.size() > 3)
        throw std::invalid_argument("end data needs 1 to 3 axes");
    KnotVector knots = KnotVector::segment_form(interval.a, interval.b);
    double delta = interval.length();
    double delta2 = delta * delta;

    std::vector<std::vector<double>> first, second;
    for (const HermiteEndData& d : per_axis) {
        auto lambda = unit_coefficients(d);
        first.push_back({d.f01 / delta,                         //
                         (d.f01 + d.f02 / 6.0) / delta,         //
                         3.0 * (lambda[3] - lambda[2]) / delta, //
                         (d.f11 - d.f12 / 6.0) / delta,         //
                         d.f11 / delta});
        auto inner = interior_second_derivatives(d);
        second.push_back(
            {d.f02 / delta2, inner[0] / delta2, inner[1] / delta2, d.f12 / delta2});
    }
    KnotVector first_knots = knots.trimmed();
    KnotVector second_knots = first_knots.trimmed();
    return {BSplineCurve(std::move(first_knots), 2, std::move(first)),
            BSplineCurve(std::move(second_knots), 1, std::move(second))};
}

SegmentSpline segment_from_end_data(Interval interval,
                                    const std::vector<HermiteEndData>& per_axis) {
    if (per_axis.empty() || per_axis.size() > 3)
        throw std::invalid_argument("end data needs 1 to 3 axes");
    KnotVector knots = KnotVector::segment_form(interval.a, interval.b);
    std::vector<std::vector<double>> position;
    std::vector<std::array<double, 6>> raw;
    for (const HermiteEndData& d : per_axis) {
        auto lambda = unit_coefficients(d);
        position.emplace_back(lambda.begin(), lambda.end());
        raw.push_back({d.f00, d.f01, d.f02, d.f10, d.f11, d.f12});
    }
    auto [first, second] = derivative_curves_from_end_data(interval, per_axis);
    return SegmentSpline(BSplineCurve(std::move(knots), 3, std::move(position)),
                         std::move(first), std::move(second), std::move(raw));
}

SegmentSpline interp_segment(const CurveSource& source, Interval interval) {
    return segment_from_end_data(interval, scale_to_unit(source, interval));
}

} // namespace toolfit
