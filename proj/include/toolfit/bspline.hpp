#pragma once

#include <array>
#include <span>
#include <vector>

namespace toolfit {

// Nondecreasing knot sequence. Clamped vectors carry end knots with
// multiplicity degree+1, so the curve interpolates its first and last
// coefficients.
class KnotVector {
public:
    explicit KnotVector(std::vector<double> knots);

    // The ten-knot segment form over [t0, t1]: multiplicity 4 at both ends
    // and two interior knots at the thirds points.
    static KnotVector segment_form(double t0, double t1);

    std::size_t size() const { return knots_.size(); }
    double operator[](std::size_t i) const { return knots_[i]; }
    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }
    std::span<const double> values() const { return knots_; }

    // Number of basis functions this vector supports at `degree`.
    int basis_count(int degree) const { return static_cast<int>(knots_.size()) - degree - 1; }

    // Span index i with knots[i] <= t < knots[i+1]; the last nonempty span
    // is treated as closed so t == back() lands inside it.
    int span_of(double t, int degree) const;

    // Drops the first and last knot (the reduced vector used by derivative
    // coefficient differencing).
    KnotVector trimmed() const;

    bool operator==(const KnotVector&) const = default;

private:
    std::vector<double> knots_;
};

// N_{index,degree}(t). Half-open spans, except the last span is closed so
// the final basis function evaluates to 1 at the right endpoint.
double basis_eval(const KnotVector& knots, int index, int degree, double t);

// All degree+1 basis functions that are nonzero on the span containing t,
// i.e. indices span-degree .. span. Triangular scheme with 0/0 := 0.
void basis_nonzero(const KnotVector& knots, int span, int degree, double t,
                   std::span<double> out);

// Piecewise-polynomial curve over a clamped knot vector, one coefficient
// list per axis. Immutable; evaluation is pure.
class BSplineCurve {
public:
    BSplineCurve(KnotVector knots, int degree, std::vector<std::vector<double>> coeffs);

    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(coeffs_.size()); }
    const KnotVector& knots() const { return knots_; }
    const std::vector<double>& coeffs(int axis) const { return coeffs_[axis]; }

    double eval(double t, int axis) const;

    // Coefficient-differenced derivative: degree drops by one, knot vector
    // loses its first and last entry. Denominators use actual knot values,
    // so results are derivatives in the curve's own parameter.
    BSplineCurve derivative() const;

private:
    KnotVector knots_;
    int degree_;
    std::vector<std::vector<double>> coeffs_;
};

// One interpolated segment: cubic curve over a segment-form knot vector with
// six coefficients per axis, plus precomputed first- and second-derivative
// curves so evaluation at any order is a plain basis sum.
//
// The plain constructor derives the derivative curves by coefficient
// differencing. Endpoint interpolation instead supplies them directly from
// the scaled end data (second constructor): differencing position
// coefficients divides their rounding by the squared segment length, which
// ruins endpoint second derivatives on short segments, while the data form
// keeps them exact.
class SegmentSpline {
public:
    SegmentSpline(KnotVector knots, std::vector<std::vector<double>> coeffs);
    SegmentSpline(BSplineCurve position, BSplineCurve first, BSplineCurve second,
                  std::vector<std::array<double, 6>> end_scaled_data);

    int dim() const { return position_.dim(); }
    double t0() const { return position_.knots().front(); }
    double t1() const { return position_.knots().back(); }
    const KnotVector& knots() const { return position_.knots(); }
    const std::vector<double>& coeffs(int axis) const { return position_.coeffs(axis); }

    // Unit-scaled endpoint data (f00..f12 per axis) when the segment was
    // built from it; empty for the differencing route.
    const std::vector<std::array<double, 6>>& end_scaled_data() const {
        return end_scaled_data_;
    }

    // order 0 = position, 1 = first derivative, 2 = second derivative.
    double eval(double t, int axis, int order) const;

private:
    BSplineCurve position_;
    BSplineCurve first_;
    BSplineCurve second_;
    std::vector<std::array<double, 6>> end_scaled_data_;
};

} // namespace toolfit
