#pragma once

#include <optional>
#include <vector>

#include "toolfit/sources.hpp"

namespace toolfit {

// Estimated sup of |F''| over an interval for one axis, plus the exact
// endpoint magnitudes that enter the segment constant.
struct SecondDerivEstimate {
    double sup_abs = 0.0;  // >= max(at_left, at_right)
    double at_left = 0.0;  // |F''| at the interval start
    double at_right = 0.0; // |F''| at the interval end
    int samples_used = 0;  // 0 when a closed form was available
};

// Strictly increasing breakpoints a = t0 < ... < tn = b.
class Partition {
public:
    explicit Partition(std::vector<double> breakpoints);

    std::size_t interval_count() const { return breakpoints_.size() - 1; }
    double front() const { return breakpoints_.front(); }
    double back() const { return breakpoints_.back(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    Interval interval(std::size_t i) const { return {breakpoints_[i], breakpoints_[i + 1]}; }

private:
    std::vector<double> breakpoints_;
};

// Total geometric tolerance and its Euclidean split across axes: with
// per-axis bounds e_i = M_i/8 h^2 the combined deviation obeys
// sqrt(sum e_i^2) <= d once h satisfies the parametric step rule.
struct ToleranceBudget {
    double d = 0.0;

    explicit ToleranceBudget(double tolerance);
    std::vector<double> per_axis_caps(const std::vector<double>& segment_constants,
                                      double step) const;
};

struct EstimateOptions {
    int grid_samples = 129;
    double safety = 0.05; // inflation applied to sampled maxima only
};

// sup|F''| over the interval: exact where the source provides a closed form,
// otherwise a dense grid plus one local refinement pass, inflated by the
// safety factor.
SecondDerivEstimate estimate_second_derivative(const CurveSource& source, Interval interval,
                                               int axis, const EstimateOptions& opts = {});

// The per-interval error constant
//   M = 7 sup|F''| + max(5/6 |F''(a)| + 1/3 |F''(b)|, 1/3 |F''(a)| + 5/6 |F''(b)|).
double segment_constant(const SecondDerivEstimate& est);

// Deviation bound M/8 * h^2 for a segment of length h (h is the full
// interval length).
double error_bound(double segment_const, double interval_length);

// Largest step meeting tolerance d for a scalar curve: sqrt(8 d / M).
// nullopt when M = 0 (no step limit; straight pieces).
std::optional<double> max_step_scalar(double segment_const, double d);

// Parametric rule sqrt(8 d) / (sum M_axis^2)^(1/4); reduces to the scalar
// rule when all but one axis is flat.
std::optional<double> max_step_parametric(const std::vector<double>& per_axis_constants,
                                          double d);

// Euclidean combination of per-axis bounds for a step of length h.
double combined_bound(const std::vector<double>& per_axis_constants, double step);

struct AdaptiveOptions {
    int verify_samples = 65;        // per candidate segment
    double min_step_factor = 1e-9;  // of the requested domain length
    EstimateOptions estimate;
};

// Greedy left-to-right march: split at the source's own breakpoints, take
// rule-limited steps, and accept a step only after the fitted segment's
// sampled deviation stays within d (bisecting otherwise). Intervals on which
// endpoint interpolation is exact (straight or cubic pieces) take one
// segment regardless of d.
Partition adaptive_partition(const CurveSource& source, Interval domain, double d,
                             const AdaptiveOptions& opts = {});

// Comparison strategy: one rule step from the constants of a whole smooth
// span, applied uniformly within it.
Partition uniform_partition(const CurveSource& source, Interval domain, double d,
                            const AdaptiveOptions& opts = {});

// Max sampled deviation between a fitted segment and the source on an
// interval (Euclidean across axes for dim >= 2).
double sampled_deviation(const CurveSource& source, const class SegmentSpline& segment,
                         Interval interval, int samples);

} // namespace toolfit
