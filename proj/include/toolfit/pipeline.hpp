#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toolfit/composite.hpp"
#include "toolfit/error_control.hpp"
#include "toolfit/offset.hpp"
#include "toolfit/sources.hpp"

namespace toolfit {

enum class FitStrategy { adaptive, uniform };

struct FitOptions {
    double tolerance = 1e-3;
    FitStrategy strategy = FitStrategy::adaptive;
    int report_samples = 64; // deviation samples per segment in reports
    AdaptiveOptions adaptive;
};

// One row per fitted segment: the effective constant sqrt(sum M_axis^2),
// the bound it implies for the segment length, and the measured deviation.
struct SegmentReportRow {
    std::size_t index = 0;
    Interval interval;
    double segment_const = 0.0;
    double bound = 0.0;
    double measured = 0.0;
    bool pass = true;
};

struct CurveFit {
    CompositeSpline spline;
    DeviationReport deviation;
    ContinuityReport continuity;
    std::vector<SegmentReportRow> rows;
};

// Fit one C2 source over its whole domain.
CurveFit fit_curve(const CurveSource& source, const FitOptions& opts);

// Maximal runs of a source that are parametrically C2: a PiecewisePath is
// cut at every junction whose value or derivatives jump; anything else is a
// single section. Fitting each section separately keeps every emitted curve
// C2-verifiable.
std::vector<SourcePtr> split_c2_sections(const SourcePtr& source);

struct SourceFit {
    SourcePtr fitted_source; // what was actually fitted (path or compensated offset)
    std::vector<SourcePtr> sections;
    std::vector<CurveFit> curves;
    bool all_pass = true;
    std::vector<double> degenerate_offset_params; // sampled 1 - r*kappa <= 0 spots
};

// interp pipeline: split into sections and fit each (independent sections
// run concurrently).
SourceFit fit_source(const SourcePtr& source, const FitOptions& opts);

// offset pipeline: corner-compensate the path at `radius`, then fit the
// compensated path.
SourceFit fit_offset(const PiecewisePath& path, double radius, const FitOptions& opts);

} // namespace toolfit
