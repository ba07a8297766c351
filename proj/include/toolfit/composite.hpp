#pragma once

#include <array>
#include <vector>

#include "toolfit/bspline.hpp"
#include "toolfit/error_control.hpp"
#include "toolfit/sources.hpp"

namespace toolfit {

// Ordered per-interval segments over a partition, evaluable globally.
// Assembled from endpoint interpolation, the result matches the source's
// value and first two derivatives at every breakpoint, which makes it C2
// whenever the source is.
class CompositeSpline {
public:
    CompositeSpline(Partition partition, std::vector<SegmentSpline> segments);

    int dim() const { return segments_.front().dim(); }
    const Partition& partition() const { return partition_; }
    std::size_t segment_count() const { return segments_.size(); }
    const SegmentSpline& segment(std::size_t i) const { return segments_[i]; }
    Interval domain() const { return {partition_.front(), partition_.back()}; }

    // Breakpoint lookup by binary search; the last interval is right-closed.
    std::size_t segment_index(double t) const;
    double eval(double t, int axis, int order) const;
    std::array<double, 3> eval_point(double t, int order) const;

private:
    Partition partition_;
    std::vector<SegmentSpline> segments_;
};

CompositeSpline assemble(const CurveSource& source, const Partition& partition);

// Jump magnitudes across one interior breakpoint, scaled by
// max(1, |left|, |right|) per order, maxed over axes.
struct BreakpointJumps {
    double t = 0.0;
    std::array<double, 3> jump{0.0, 0.0, 0.0};
};

struct ContinuityReport {
    std::vector<BreakpointJumps> breakpoints;
    double eps = 0.0;
    bool pass = true;
    double worst() const;
};

ContinuityReport verify_c2(const CompositeSpline& comp, double eps);

struct SegmentDeviation {
    std::size_t index = 0;
    Interval interval;
    double max_deviation = 0.0;
    double argmax = 0.0;
};

struct DeviationReport {
    std::vector<SegmentDeviation> segments;
    double tolerance = 0.0;
    double max_deviation = 0.0;
    double argmax = 0.0;
    bool pass = true;
};

// Dense equal-parameter sampling of |F - B| (Euclidean across axes for
// dim >= 2); requires at least 16 samples per segment.
DeviationReport verify_error(const CompositeSpline& comp, const CurveSource& source, double d,
                             int samples_per_segment);

// Serialization view: one knot list covering the whole composite, with
// multiplicity 1 at the thirds points and 3 at interior breakpoints; the
// matching coefficients are the per-segment coefficients with the shared
// breakpoint coefficient written once. Restricted to any interval this
// reproduces the segment exactly.
KnotVector merged_knots(const CompositeSpline& comp);
std::vector<double> merged_coeffs(const CompositeSpline& comp, int axis);

} // namespace toolfit
