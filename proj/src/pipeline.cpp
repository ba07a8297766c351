#include "toolfit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "toolfit/errors.hpp"

namespace toolfit {

CurveFit fit_curve(const CurveSource& source, const FitOptions& opts) {
    Interval domain = source.domain();
    Partition partition = opts.strategy == FitStrategy::adaptive
                              ? adaptive_partition(source, domain, opts.tolerance, opts.adaptive)
                              : uniform_partition(source, domain, opts.tolerance, opts.adaptive);
    CompositeSpline spline = assemble(source, partition);
    DeviationReport deviation = verify_error(spline, source, opts.tolerance,
                                             std::max(16, opts.report_samples));
    ContinuityReport continuity = verify_c2(spline, 1e-8);

    std::vector<SegmentReportRow> rows;
    rows.reserve(spline.segment_count());
    for (std::size_t i = 0; i < spline.segment_count(); ++i) {
        Interval iv = partition.interval(i);
        double sum_sq = 0.0;
        for (int axis = 0; axis < source.dim(); ++axis) {
            double m = segment_constant(
                estimate_second_derivative(source, iv, axis, opts.adaptive.estimate));
            sum_sq += m * m;
        }
        SegmentReportRow row;
        row.index = i;
        row.interval = iv;
        row.segment_const = std::sqrt(sum_sq);
        row.bound = error_bound(row.segment_const, iv.length());
        row.measured = deviation.segments[i].max_deviation;
        row.pass = row.measured <= opts.tolerance;
        rows.push_back(row);
    }

    return CurveFit{std::move(spline), std::move(deviation), std::move(continuity),
                    std::move(rows)};
}

std::vector<SourcePtr> split_c2_sections(const SourcePtr& source) {
    const auto* path = dynamic_cast<const PiecewisePath*>(source.get());
    if (!path) return {source};

    std::vector<double> cuts{path->domain().a};
    for (const Junction& j : path->junctions())
        if (!j.parametric_c2 && j.parameter < path->domain().b) cuts.push_back(j.parameter);
    cuts.push_back(path->domain().b);

    if (cuts.size() == 2) return {source};
    std::vector<SourcePtr> sections;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        sections.push_back(std::make_shared<SubCurve>(source, Interval{cuts[i], cuts[i + 1]}));
    return sections;
}

SourceFit fit_source(const SourcePtr& source, const FitOptions& opts) {
    SourceFit out;
    out.fitted_source = source;
    out.sections = split_c2_sections(source);

    std::vector<std::future<CurveFit>> futures;
    futures.reserve(out.sections.size());
    for (const auto& section : out.sections)
        futures.push_back(std::async(std::launch::async,
                                     [&opts, section] { return fit_curve(*section, opts); }));
    for (auto& f : futures) {
        out.curves.push_back(f.get());
        const CurveFit& fit = out.curves.back();
        if (!fit.deviation.pass || !fit.continuity.pass) out.all_pass = false;
    }
    return out;
}

SourceFit fit_offset(const PiecewisePath& path, double radius, const FitOptions& opts) {
    auto compensated =
        std::make_shared<PiecewisePath>(corner_compensation(path, radius, CompensationOptions{}));
    SourceFit out = fit_source(compensated, opts);

    // sample each offset piece for spots where 1 - r*kappa <= 0; evaluation
    // still works there, but the toolpath folds back and deserves a warning
    for (std::size_t i = 0; i < compensated->piece_count(); ++i) {
        const CurveSource* piece = compensated->piece(i).get();
        Interval d = piece->domain();
        const auto* off = dynamic_cast<const OffsetCurve*>(piece);
        if (const auto* sub = dynamic_cast<const SubCurve*>(piece))
            off = dynamic_cast<const OffsetCurve*>(sub->base().get());
        if (!off) continue;
        for (int k = 0; k <= 32; ++k) {
            double t = d.a + d.length() * k / 32;
            bool degenerate;
            try {
                degenerate = off->locally_degenerate(t, k == 0 ? Side::above : Side::below);
            } catch (const GeometryError&) {
                degenerate = true; // zero tangent at the sample point
            }
            if (degenerate)
                out.degenerate_offset_params.push_back(compensated->piece_start(i) + (t - d.a));
        }
    }
    return out;
}

} // namespace toolfit
