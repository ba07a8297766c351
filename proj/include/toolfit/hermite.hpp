#pragma once

#include <array>
#include <vector>

#include "toolfit/bspline.hpp"
#include "toolfit/sources.hpp"

namespace toolfit {

// Unit-interval-scaled endpoint data for one axis: value, first and second
// derivative at both ends, already multiplied by the interval length and its
// square (f01 = (t1-t0) F'(t0), f02 = (t1-t0)^2 F''(t0), and mirrored on the
// right).
struct HermiteEndData {
    double f00 = 0.0, f01 = 0.0, f02 = 0.0;
    double f10 = 0.0, f11 = 0.0, f12 = 0.0;
};

// The six control coefficients of the unique C2 cubic B-spline over
// {0,0,0,0, 1/3, 2/3, 1,1,1,1} matching the given endpoint data:
//   l0 = f00
//   l1 = f01/9 + f00
//   l2 = f02/27 + f01/3 + f00
//   l3 = f12/27 - f11/3 + f10
//   l4 = f10 - f11/9
//   l5 = f10
std::array<double, 6> unit_coefficients(const HermiteEndData& data);

// Second derivative of the unit segment at the interior knots 1/3 and 2/3.
// These two values, with the endpoint second derivatives, determine the
// (piecewise-linear) second derivative completely.
std::array<double, 2> interior_second_derivatives(const HermiteEndData& data);

// Endpoint data of one source axis scaled to the unit interval.
HermiteEndData scale_axis_to_unit(const CurveSource& source, Interval interval, int axis);

// All axes at once.
std::vector<HermiteEndData> scale_to_unit(const CurveSource& source, Interval interval);

// First- and second-derivative curves of the segment on the interval, built
// in data form: endpoint coefficients are exactly f01, f11 (over the
// interval scale) and f02, f12, so endpoint derivatives carry no
// differencing cancellation.
std::pair<BSplineCurve, BSplineCurve> derivative_curves_from_end_data(
    Interval interval, const std::vector<HermiteEndData>& per_axis);

// Segment over [interval.a, interval.b] built directly from unit-scaled end
// data, one entry per axis: position coefficients from unit_coefficients,
// derivative curves from derivative_curves_from_end_data.
SegmentSpline segment_from_end_data(Interval interval,
                                    const std::vector<HermiteEndData>& per_axis);

// The segment whose value, first and second derivative at both endpoints
// equal the source's. Coefficients are computed in the unit
// parameterization and reused; only the knot vector is placed on the actual
// interval.
SegmentSpline interp_segment(const CurveSource& source, Interval interval);

} // namespace toolfit
