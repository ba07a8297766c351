#include "toolfit/bspline.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "toolfit/errors.hpp"

namespace toolfit {

KnotVector::KnotVector(std::vector<double> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2)
        throw std::invalid_argument("knot vector needs at least two knots");
    for (std::size_t j = 0; j + 1 < knots_.size(); ++j)
        if (knots_[j] > knots_[j + 1])
            throw std::invalid_argument("knot vector must be nondecreasing");
}

KnotVector KnotVector::segment_form(double t0, double t1) {
    if (!(t0 < t1))
        throw std::invalid_argument("segment knot vector needs t0 < t1");
    double h = (t1 - t0) / 3.0;
    return KnotVector({t0, t0, t0, t0, t0 + h, t0 + 2.0 * h, t1, t1, t1, t1});
}

int KnotVector::span_of(double t, int degree) const {
    // absorb end-point roundoff (a + (b-a) can land one ulp past b)
    double tol = 1e-12 * std::max({1.0, std::abs(front()), std::abs(back())});
    if (t < front() - tol || t > back() + tol)
        throw DomainError("parameter outside knot range");
    t = std::clamp(t, front(), back());
    int lo = degree;
    int hi = static_cast<int>(knots_.size()) - degree - 1;
    if (t >= knots_[hi]) {
        // closed right end: step back to the last nonempty span
        int i = hi - 1;
        while (i > lo && knots_[i] == knots_[hi]) --i;
        return i;
    }
    // binary search for knots_[i] <= t < knots_[i+1]
    while (lo + 1 < hi) {
        int mid = (lo + hi) / 2;
        if (t < knots_[mid])
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

KnotVector KnotVector::trimmed() const {
    return KnotVector(std::vector<double>(knots_.begin() + 1, knots_.end() - 1));
}

void basis_nonzero(const KnotVector& knots, int span, int degree, double t,
                   std::span<double> out) {
    assert(static_cast<int>(out.size()) == degree + 1);
    out[0] = 1.0;
    std::vector<double> left(degree + 1), right(degree + 1);
    for (int j = 1; j <= degree; ++j) {
        left[j] = t - knots[span + 1 - j];
        right[j] = knots[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            double denom = right[r + 1] + left[j - r];
            double temp = denom != 0.0 ? out[r] / denom : 0.0;
            out[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        out[j] = saved;
    }
}

double basis_eval(const KnotVector& knots, int index, int degree, double t) {
    if (degree < 0)
        throw std::out_of_range("negative degree");
    if (index < 0 || index >= knots.basis_count(degree))
        throw std::out_of_range("basis index out of range for knot vector");
    int span = knots.span_of(t, degree);
    if (index < span - degree || index > span)
        return 0.0; // outside local support
    std::vector<double> vals(degree + 1);
    basis_nonzero(knots, span, degree, t, vals);
    return vals[index - (span - degree)];
}

BSplineCurve::BSplineCurve(KnotVector knots, int degree,
                           std::vector<std::vector<double>> coeffs)
    : knots_(std::move(knots)), degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree_ < 0)
        throw std::invalid_argument("negative spline degree");
    if (coeffs_.empty())
        throw std::invalid_argument("spline needs at least one axis");
    auto expected = static_cast<std::size_t>(knots_.basis_count(degree_));
    for (const auto& axis : coeffs_)
        if (axis.size() != expected)
            throw std::invalid_argument("coefficient count does not match knot vector");
}

double BSplineCurve::eval(double t, int axis) const {
    int span = knots_.span_of(t, degree_);
    double vals[8];
    basis_nonzero(knots_, span, degree_, t, std::span<double>(vals, degree_ + 1));
    const auto& c = coeffs_[axis];
    double sum = 0.0;
    for (int j = 0; j <= degree_; ++j)
        sum += vals[j] * c[span - degree_ + j];
    return sum;
}

BSplineCurve BSplineCurve::derivative() const {
    if (degree_ == 0) {
        // derivative of a step function: zero spline of degree 0 on the
        // trimmed vector
        KnotVector t = knots_.trimmed();
        std::vector<std::vector<double>> z(coeffs_.size(),
                                           std::vector<double>(t.basis_count(0), 0.0));
        return BSplineCurve(std::move(t), 0, std::move(z));
    }
    KnotVector reduced = knots_.trimmed();
    int n = reduced.basis_count(degree_ - 1);
    std::vector<std::vector<double>> out(coeffs_.size(), std::vector<double>(n));
    for (std::size_t axis = 0; axis < coeffs_.size(); ++axis) {
        const auto& c = coeffs_[axis];
        for (int i = 0; i < n; ++i) {
            double denom = reduced[i + degree_] - reduced[i];
            out[axis][i] = denom != 0.0 ? degree_ * (c[i + 1] - c[i]) / denom : 0.0;
        }
    }
    return BSplineCurve(std::move(reduced), degree_ - 1, std::move(out));
}

namespace {

void check_segment_shape(const BSplineCurve& position) {
    if (position.knots().size() != 10)
        throw std::invalid_argument("segment spline expects the ten-knot segment form");
    if (position.dim() < 1 || position.dim() > 3)
        throw std::invalid_argument("segment spline supports 1 to 3 axes");
}

} // namespace

SegmentSpline::SegmentSpline(KnotVector knots, std::vector<std::vector<double>> coeffs)
    : position_(std::move(knots), 3, std::move(coeffs)),
      first_(position_.derivative()),
      second_(first_.derivative()) {
    check_segment_shape(position_);
}

SegmentSpline::SegmentSpline(BSplineCurve position, BSplineCurve first, BSplineCurve second,
                             std::vector<std::array<double, 6>> end_scaled_data)
    : position_(std::move(position)),
      first_(std::move(first)),
      second_(std::move(second)),
      end_scaled_data_(std::move(end_scaled_data)) {
    check_segment_shape(position_);
    if (first_.degree() != 2 || second_.degree() != 1 ||
        first_.dim() != position_.dim() || second_.dim() != position_.dim())
        throw std::invalid_argument("derivative curves do not match the segment");
    if (first_.knots() != position_.knots().trimmed() ||
        second_.knots() != first_.knots().trimmed())
        throw std::invalid_argument("derivative knot vectors do not match the segment");
    if (end_scaled_data_.size() != static_cast<std::size_t>(position_.dim()))
        throw std::invalid_argument("end data does not match the segment dimension");
}

double SegmentSpline::eval(double t, int axis, int order) const {
    switch (order) {
    case 0: return position_.eval(t, axis);
    case 1: return first_.eval(t, axis);
    case 2: return second_.eval(t, axis);
    default:
        throw std::invalid_argument("unsupported derivative order (max 2)");
    }
}

} // namespace toolfit
