#pragma once

#include "toolfit/sources.hpp"

namespace toolfit {

// Locus at signed distance `radius` along the leftward unit normal of a
// planar base curve: O(t) = C(t) + r * perp(C'(t)) / |C'(t)|. Positive
// radius offsets to the left of the direction of travel. First and second
// derivatives come from closed-form differentiation of the normal, so the
// base must supply derivatives one order higher than requested.
class OffsetCurve final : public CurveSource {
public:
    OffsetCurve(SourcePtr base, double radius);

    Interval domain() const override { return base_->domain(); }
    int dim() const override { return 2; }
    int max_order() const override { return base_->max_order() - 1; }
    double eval(double t, int axis, int k) const override;
    double eval_sided(double t, int axis, int k, Side side) const override;
    std::vector<double> breakpoints() const override { return base_->breakpoints(); }
    std::optional<double> exact_second_derivative_sup(double a, double b, int axis) const override;
    bool cubic_exact(double a, double b) const override;

    const SourcePtr& base() const { return base_; }
    double radius() const { return radius_; }

    // Signed curvature of the base at t (positive turning left).
    double signed_curvature(double t, Side side = Side::below) const;

    // True where 1 - r*kappa <= 0: the offset locally folds back on itself.
    // Evaluation still works there; callers surface this as a warning.
    bool locally_degenerate(double t, Side side = Side::below) const;

private:
    Vec2 base_derivative(double t, int k, Side side) const;

    SourcePtr base_;
    double radius_;
};

struct CompensationOptions {
    double corner_threshold = kCornerThresholdRad; // radians
    double reversal_limit = 3.14159265358979323846 - 1e-6;
    double g0_tolerance = 1e-9;
};

// Offsets every piece of a planar path and repairs the junctions:
//
//  - outside corners get square compensation: both offset ends are extended
//    along their end tangents to the common intersection point, inserting
//    two line pieces through it. The inserted geometry never comes closer
//    than |radius| to the corner, and for a right-angle corner it passes
//    through the point displaced by radius along both edge normals.
//  - inside corners are trimmed back to the intersection of the two
//    adjacent offset curves (found by a damped Newton iteration on the
//    analytic offsets).
//  - junctions below the corner threshold keep their pieces; any residual
//    endpoint gap is bridged with a short line so the result stays G0.
//
// Near-reversals (no usable square corner) and pieces consumed entirely by
// trimming raise GeometryError with the junction index.
PiecewisePath corner_compensation(const PiecewisePath& path, double radius,
                                  const CompensationOptions& opts = {});

} // namespace toolfit
