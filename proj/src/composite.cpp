#include "toolfit/composite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toolfit/errors.hpp"
#include "toolfit/hermite.hpp"

namespace toolfit {

CompositeSpline::CompositeSpline(Partition partition, std::vector<SegmentSpline> segments)
    : partition_(std::move(partition)), segments_(std::move(segments)) {
    if (segments_.size() != partition_.interval_count())
        throw std::invalid_argument("segment count does not match partition");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        Interval iv = partition_.interval(i);
        if (segments_[i].t0() != iv.a || segments_[i].t1() != iv.b)
            throw std::invalid_argument("segment domain does not match partition interval");
        if (segments_[i].dim() != segments_.front().dim())
            throw std::invalid_argument("segments must share a dimension");
    }
}

std::size_t CompositeSpline::segment_index(double t) const {
    const auto& bp = partition_.breakpoints();
    if (t < bp.front() - 1e-12 || t > bp.back() + 1e-12)
        throw DomainError("parameter outside composite domain");
    auto it = std::upper_bound(bp.begin(), bp.end(), t);
    std::size_t i = it == bp.begin() ? 0 : static_cast<std::size_t>(it - bp.begin() - 1);
    return std::min(i, segments_.size() - 1);
}

double CompositeSpline::eval(double t, int axis, int order) const {
    return segments_[segment_index(t)].eval(t, axis, order);
}

std::array<double, 3> CompositeSpline::eval_point(double t, int order) const {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    const SegmentSpline& seg = segments_[segment_index(t)];
    for (int axis = 0; axis < seg.dim(); ++axis) p[axis] = seg.eval(t, axis, order);
    return p;
}

CompositeSpline assemble(const CurveSource& source, const Partition& partition) {
    Interval full = source.domain();
    if (partition.front() < full.a - 1e-12 || partition.back() > full.b + 1e-12)
        throw std::invalid_argument("partition outside source domain");
    std::vector<SegmentSpline> segments;
    segments.reserve(partition.interval_count());
    for (std::size_t i = 0; i < partition.interval_count(); ++i)
        segments.push_back(interp_segment(source, partition.interval(i)));
    return CompositeSpline(partition, std::move(segments));
}

double ContinuityReport::worst() const {
    double w = 0.0;
    for (const auto& b : breakpoints)
        for (double j : b.jump) w = std::max(w, j);
    return w;
}

ContinuityReport verify_c2(const CompositeSpline& comp, double eps) {
    ContinuityReport report;
    report.eps = eps;
    for (std::size_t i = 0; i + 1 < comp.segment_count(); ++i) {
        double t = comp.partition().breakpoints()[i + 1];
        BreakpointJumps bj;
        bj.t = t;
        for (int order = 0; order <= 2; ++order) {
            double worst = 0.0;
            for (int axis = 0; axis < comp.dim(); ++axis) {
                double left = comp.segment(i).eval(t, axis, order);
                double right = comp.segment(i + 1).eval(t, axis, order);
                double scale = std::max({1.0, std::abs(left), std::abs(right)});
                worst = std::max(worst, std::abs(left - right) / scale);
            }
            bj.jump[order] = worst;
            if (worst > eps) report.pass = false;
        }
        report.breakpoints.push_back(bj);
    }
    return report;
}

DeviationReport verify_error(const CompositeSpline& comp, const CurveSource& source, double d,
                             int samples_per_segment) {
    if (samples_per_segment < 16)
        throw std::invalid_argument("deviation check needs at least 16 samples per segment");
    if (source.dim() != comp.dim())
        throw std::invalid_argument("source and composite dimensions differ");
    DeviationReport report;
    report.tolerance = d;
    for (std::size_t i = 0; i < comp.segment_count(); ++i) {
        Interval iv = comp.partition().interval(i);
        SegmentDeviation sd;
        sd.index = i;
        sd.interval = iv;
        sd.argmax = iv.a;
        for (int k = 0; k < samples_per_segment; ++k) {
            double t = k == samples_per_segment - 1
                           ? iv.b
                           : iv.a + iv.length() * k / (samples_per_segment - 1);
            Side side = k == 0 ? Side::above : Side::below;
            double sum_sq = 0.0;
            for (int axis = 0; axis < comp.dim(); ++axis) {
                double diff =
                    source.eval_sided(t, axis, 0, side) - comp.segment(i).eval(t, axis, 0);
                sum_sq += diff * diff;
            }
            double dev = std::sqrt(sum_sq);
            if (dev > sd.max_deviation) {
                sd.max_deviation = dev;
                sd.argmax = t;
            }
        }
        if (sd.max_deviation > report.max_deviation) {
            report.max_deviation = sd.max_deviation;
            report.argmax = sd.argmax;
        }
        report.segments.push_back(sd);
    }
    report.pass = report.max_deviation <= d;
    return report;
}

KnotVector merged_knots(const CompositeSpline& comp) {
    const auto& bp = comp.partition().breakpoints();
    std::vector<double> knots;
    knots.insert(knots.end(), 4, bp.front());
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double h = (bp[i + 1] - bp[i]) / 3.0;
        knots.push_back(bp[i] + h);
        knots.push_back(bp[i] + 2.0 * h);
        int mult = i + 2 < bp.size() ? 3 : 4;
        knots.insert(knots.end(), mult, bp[i + 1]);
    }
    return KnotVector(std::move(knots));
}

std::vector<double> merged_coeffs(const CompositeSpline& comp, int axis) {
    std::vector<double> out;
    for (std::size_t i = 0; i < comp.segment_count(); ++i) {
        const auto& c = comp.segment(i).coeffs(axis);
        out.insert(out.end(), c.begin() + (i == 0 ? 0 : 1), c.end());
    }
    return out;
}

} // namespace toolfit
