#include "toolfit/error_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toolfit/errors.hpp"
#include "toolfit/hermite.hpp"

namespace toolfit {

Partition::Partition(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.size() < 2)
        throw std::invalid_argument("partition needs at least two breakpoints");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw std::invalid_argument("partition breakpoints must be strictly increasing");
}

ToleranceBudget::ToleranceBudget(double tolerance) : d(tolerance) {
    if (!(d > 0.0))
        throw std::invalid_argument("tolerance must be positive");
}

std::vector<double> ToleranceBudget::per_axis_caps(const std::vector<double>& segment_constants,
                                                   double step) const {
    std::vector<double> caps;
    caps.reserve(segment_constants.size());
    for (double m : segment_constants) caps.push_back(error_bound(m, step));
    return caps;
}

SecondDerivEstimate estimate_second_derivative(const CurveSource& source, Interval interval,
                                               int axis, const EstimateOptions& opts) {
    if (!(interval.a < interval.b))
        throw std::invalid_argument("empty estimation interval");
    Interval full = source.domain();
    if (interval.a < full.a - 1e-12 || interval.b > full.b + 1e-12)
        throw std::invalid_argument("estimation interval outside source domain");

    SecondDerivEstimate est;
    est.at_left = std::abs(source.eval_sided(interval.a, axis, 2, Side::above));
    est.at_right = std::abs(source.eval_sided(interval.b, axis, 2, Side::below));

    if (auto exact = source.exact_second_derivative_sup(interval.a, interval.b, axis)) {
        est.sup_abs = std::max({*exact, est.at_left, est.at_right});
        est.samples_used = 0;
        return est;
    }

    // dense grid, then one local refinement pass around the maximizer
    int m = std::max(opts.grid_samples, 3);
    auto f2 = [&](double t) {
        if (t <= interval.a) return est.at_left;
        if (t >= interval.b) return est.at_right;
        return std::abs(source.eval(t, axis, 2));
    };
    double h = interval.length() / (m - 1);
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i < m; ++i) {
        double v = f2(interval.a + i * h);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    double lo = interval.a + std::max(best_i - 1, 0) * h;
    double hi = interval.a + std::min(best_i + 1, m - 1) * h;
    for (int iter = 0; iter < 60 && hi - lo > 1e-14 * interval.length(); ++iter) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (f2(m1) < f2(m2))
            lo = m1;
        else
            hi = m2;
        best = std::max({best, f2(m1), f2(m2)});
    }
    est.sup_abs = std::max({(1.0 + opts.safety) * best, est.at_left, est.at_right});
    est.samples_used = m + 120;
    return est;
}

double segment_constant(const SecondDerivEstimate& est) {
    double end_term = std::max(5.0 / 6.0 * est.at_left + 1.0 / 3.0 * est.at_right,
                               1.0 / 3.0 * est.at_left + 5.0 / 6.0 * est.at_right);
    return 7.0 * est.sup_abs + end_term;
}

double error_bound(double segment_const, double interval_length) {
    if (!(interval_length > 0.0))
        throw std::invalid_argument("interval length must be positive");
    return segment_const / 8.0 * interval_length * interval_length;
}

std::optional<double> max_step_scalar(double segment_const, double d) {
    if (!(d > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (segment_const < 0.0)
        throw std::invalid_argument("segment constant must be nonnegative");
    if (segment_const == 0.0) return std::nullopt;
    return std::sqrt(8.0 * d / segment_const);
}

std::optional<double> max_step_parametric(const std::vector<double>& per_axis_constants,
                                          double d) {
    if (!(d > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    double sum_sq = 0.0;
    double largest = 0.0;
    int active = 0;
    for (double m : per_axis_constants) {
        if (m < 0.0)
            throw std::invalid_argument("segment constant must be nonnegative");
        if (m > 0.0) {
            ++active;
            largest = std::max(largest, m);
        }
        sum_sq += m * m;
    }
    if (active == 0) return std::nullopt;
    if (active == 1) return max_step_scalar(largest, d); // exact scalar reduction
    return std::sqrt(8.0 * d) / std::sqrt(std::sqrt(sum_sq));
}

double combined_bound(const std::vector<double>& per_axis_constants, double step) {
    double sum_sq = 0.0;
    for (double m : per_axis_constants) {
        double e = error_bound(m, step);
        sum_sq += e * e;
    }
    return std::sqrt(sum_sq);
}

double sampled_deviation(const CurveSource& source, const SegmentSpline& segment,
                         Interval interval, int samples) {
    samples = std::max(samples, 2);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double t = i == samples - 1 ? interval.b
                                    : interval.a + interval.length() * i / (samples - 1);
        double sum_sq = 0.0;
        for (int axis = 0; axis < source.dim(); ++axis) {
            Side side = i == 0 ? Side::above : Side::below;
            double diff = source.eval_sided(t, axis, 0, side) - segment.eval(t, axis, 0);
            sum_sq += diff * diff;
        }
        worst = std::max(worst, std::sqrt(sum_sq));
    }
    return worst;
}

namespace {

// Per-axis segment constants over a window.
std::vector<double> window_constants(const CurveSource& source, Interval window,
                                     const EstimateOptions& opts) {
    std::vector<double> ms;
    ms.reserve(source.dim());
    for (int axis = 0; axis < source.dim(); ++axis)
        ms.push_back(segment_constant(estimate_second_derivative(source, window, axis, opts)));
    return ms;
}

std::optional<double> rule_step(const CurveSource& source, Interval window, double d,
                                const EstimateOptions& opts) {
    auto ms = window_constants(source, window, opts);
    if (source.dim() == 1) return max_step_scalar(ms[0], d);
    return max_step_parametric(ms, d);
}

// Smooth spans: the domain cut at the source's interior breakpoints.
std::vector<Interval> smooth_spans(const CurveSource& source, Interval domain) {
    std::vector<double> cuts{domain.a};
    for (double t : source.breakpoints())
        if (t > domain.a && t < domain.b) cuts.push_back(t);
    cuts.push_back(domain.b);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Interval> spans;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i] < cuts[i + 1]) spans.push_back({cuts[i], cuts[i + 1]});
    return spans;
}

void check_fit_request(const CurveSource& source, Interval domain, double d) {
    if (!(d > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (!(domain.a < domain.b))
        throw std::invalid_argument("empty fitting domain");
    Interval full = source.domain();
    if (domain.a < full.a - 1e-12 || domain.b > full.b + 1e-12)
        throw std::invalid_argument("fitting domain outside source domain");
}

} // namespace

Partition adaptive_partition(const CurveSource& source, Interval domain, double d,
                             const AdaptiveOptions& opts) {
    check_fit_request(source, domain, d);
    double min_step = opts.min_step_factor * domain.length();

    std::vector<double> breaks{domain.a};
    for (Interval span : smooth_spans(source, domain)) {
        double t = span.a;
        while (t < span.b) {
            double remaining = span.b - t;
            double step = remaining;
            if (!source.cubic_exact(t, span.b)) {
                // iterate the trial window toward a self-consistent rule step;
                // a window clipped to the local stretch usually has a smaller
                // constant and therefore allows a longer step
                for (int iter = 0; iter < 3; ++iter) {
                    auto rule = rule_step(source, {t, t + step}, d, opts.estimate);
                    if (!rule || *rule >= remaining) {
                        step = remaining;
                        break;
                    }
                    double next = std::min(*rule, remaining);
                    if (std::abs(next - step) <= 1e-3 * step) {
                        step = next;
                        break;
                    }
                    step = next;
                }
            }
            if (step > remaining - min_step)
                step = remaining;
            else if (remaining < 1.5 * step)
                step = 0.5 * remaining; // two balanced steps instead of a sliver tail
            while (true) {
                SegmentSpline seg = interp_segment(source, {t, t + step});
                if (sampled_deviation(source, seg, {t, t + step}, opts.verify_samples) <= d)
                    break;
                step /= 2.0;
                if (step < min_step)
                    throw ToleranceError("adaptive step underflow: tolerance unreachable");
            }
            t = step == remaining ? span.b : t + step;
            breaks.push_back(t);
        }
    }
    return Partition(std::move(breaks));
}

Partition uniform_partition(const CurveSource& source, Interval domain, double d,
                            const AdaptiveOptions& opts) {
    check_fit_request(source, domain, d);
    std::vector<double> breaks{domain.a};
    for (Interval span : smooth_spans(source, domain)) {
        double len = span.length();
        int n = 1;
        if (!source.cubic_exact(span.a, span.b)) {
            auto rule = rule_step(source, span, d, opts.estimate);
            if (rule && *rule < len) {
                if (len / *rule > 1e7)
                    throw ToleranceError("uniform step rule demands over 1e7 segments");
                n = static_cast<int>(std::ceil(len / *rule));
            }
        }
        for (int i = 1; i <= n; ++i)
            breaks.push_back(i == n ? span.b : span.a + len * i / n);
    }
    return Partition(std::move(breaks));
}

} // namespace toolfit
