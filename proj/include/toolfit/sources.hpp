#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "toolfit/vec2.hpp"

namespace toolfit {

struct Interval {
    double a = 0.0;
    double b = 1.0;
    double length() const { return b - a; }
};

// Which one-sided limit to take at a parameter where derivatives may jump
// (piece junctions). Smooth sources ignore it.
enum class Side { below, above };

// A source curve the fitter consumes: a domain, a dimension, and per-axis
// derivatives up to order 3.
class CurveSource {
public:
    virtual ~CurveSource() = default;

    virtual Interval domain() const = 0;
    virtual int dim() const = 0;

    // k-th derivative of axis `axis` at t, k in 0..max_order().
    virtual double eval(double t, int axis, int k) const = 0;

    // Highest derivative order eval supports.
    virtual int max_order() const { return 3; }

    // One-sided evaluation at junction parameters.
    virtual double eval_sided(double t, int axis, int k, Side) const {
        return eval(t, axis, k);
    }

    // Interior parameters where derivatives may be discontinuous.
    virtual std::vector<double> breakpoints() const { return {}; }

    // Exact sup of |F''| over [a,b] for one axis, when the source has a
    // closed form for it. nullopt means: sample.
    virtual std::optional<double> exact_second_derivative_sup(double, double, int) const {
        return std::nullopt;
    }

    // True when the restriction to [a,b] is a declared polynomial of degree
    // <= 3 per axis, so endpoint interpolation reproduces it exactly and no
    // step limit applies (the straight-line case generalized to explicit
    // polynomial sources). Curved path pieces such as Beziers keep the step
    // rule even when a single segment would happen to be exact.
    virtual bool cubic_exact(double, double) const { return false; }
};

using SourcePtr = std::shared_ptr<const CurveSource>;

// ---------------------------------------------------------------------------
// Concrete sources
// ---------------------------------------------------------------------------

// Straight segment between two points, parameter in [0,1].
class LineSource final : public CurveSource {
public:
    LineSource(std::vector<double> from, std::vector<double> to);

    Interval domain() const override { return {0.0, 1.0}; }
    int dim() const override { return static_cast<int>(from_.size()); }
    double eval(double t, int axis, int k) const override;
    std::optional<double> exact_second_derivative_sup(double, double, int) const override {
        return 0.0;
    }
    bool cubic_exact(double, double) const override { return true; }

    const std::vector<double>& from() const { return from_; }
    const std::vector<double>& to() const { return to_; }

private:
    std::vector<double> from_, to_;
};

// Per-axis polynomials in ascending powers over an explicit interval.
class PolynomialSource final : public CurveSource {
public:
    PolynomialSource(std::vector<std::vector<double>> coeffs_per_axis, Interval domain);

    Interval domain() const override { return domain_; }
    int dim() const override { return static_cast<int>(coeffs_.size()); }
    double eval(double t, int axis, int k) const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int axis) const override;
    bool cubic_exact(double, double) const override;

    const std::vector<double>& coeffs(int axis) const { return coeffs_[axis]; }

private:
    std::vector<std::vector<double>> coeffs_;
    Interval domain_;
};

// amplitude * sin(scale * t + phase), one axis.
class SineSource final : public CurveSource {
public:
    SineSource(double amplitude, double scale, double phase, Interval domain);

    Interval domain() const override { return domain_; }
    int dim() const override { return 1; }
    double eval(double t, int axis, int k) const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int) const override;

private:
    double amplitude_, scale_, phase_;
    Interval domain_;
};

// amplitude * exp(scale * t), one axis.
class ExpSource final : public CurveSource {
public:
    ExpSource(double amplitude, double scale, Interval domain);

    Interval domain() const override { return domain_; }
    int dim() const override { return 1; }
    double eval(double t, int axis, int k) const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int) const override;

private:
    double amplitude_, scale_;
    Interval domain_;
};

// Exact trigonometric circular arc from angle0 toward angle1 (either
// direction), parameterized by swept angle: t in [0, |angle1 - angle0|].
class ArcSource final : public CurveSource {
public:
    ArcSource(Vec2 center, double radius, double angle0, double angle1);

    Interval domain() const override { return {0.0, sweep_}; }
    int dim() const override { return 2; }
    double eval(double t, int axis, int k) const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int axis) const override;

    Vec2 center() const { return center_; }
    double radius() const { return radius_; }

private:
    double angle_at(double t) const { return angle0_ + dir_ * t; }

    Vec2 center_;
    double radius_, angle0_, sweep_, dir_;
};

// Bezier segment of arbitrary degree >= 1 over [0,1]; derivatives by
// hodograph differencing evaluated with de Casteljau.
class BezierSegment final : public CurveSource {
public:
    explicit BezierSegment(std::vector<std::vector<double>> control_points);

    Interval domain() const override { return {0.0, 1.0}; }
    int dim() const override { return dim_; }
    int degree() const { return static_cast<int>(points_.size()) - 1; }
    double eval(double t, int axis, int k) const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int axis) const override;

    const std::vector<std::vector<double>>& control_points() const { return points_; }

private:
    std::vector<std::vector<double>> points_; // points_[i] has dim_ entries
    int dim_;
};

// k-th derivative vector of a Bezier segment; k beyond the degree is the
// zero vector.
std::vector<double> bezier_derivatives(const BezierSegment& seg, double t, int k);

// Arbitrary callable source for tests and ad hoc curves; supplies no exact
// second-derivative information, so estimates take the sampled route.
class CallableSource final : public CurveSource {
public:
    using Fn = std::function<double(double t, int axis, int k)>;
    CallableSource(Fn fn, int dim, Interval domain, int max_order = 3)
        : fn_(std::move(fn)), dim_(dim), domain_(domain), max_order_(max_order) {}

    Interval domain() const override { return domain_; }
    int dim() const override { return dim_; }
    int max_order() const override { return max_order_; }
    double eval(double t, int axis, int k) const override;

private:
    Fn fn_;
    int dim_;
    Interval domain_;
    int max_order_;
};

// Restriction of a source to a subinterval of its domain.
class SubCurve final : public CurveSource {
public:
    SubCurve(SourcePtr base, Interval domain);

    Interval domain() const override { return domain_; }
    int dim() const override { return base_->dim(); }
    int max_order() const override { return base_->max_order(); }
    double eval(double t, int axis, int k) const override { return base_->eval(t, axis, k); }
    double eval_sided(double t, int axis, int k, Side side) const override {
        return base_->eval_sided(t, axis, k, side);
    }
    std::vector<double> breakpoints() const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int axis) const override {
        return base_->exact_second_derivative_sup(a, b, axis);
    }
    bool cubic_exact(double a, double b) const override { return base_->cubic_exact(a, b); }

    const SourcePtr& base() const { return base_; }

private:
    SourcePtr base_;
    Interval domain_;
};

// ---------------------------------------------------------------------------
// Piecewise paths
// ---------------------------------------------------------------------------

enum class JunctionKind { smooth, corner };

struct Junction {
    double parameter = 0.0;     // global parameter of the junction
    double turning_angle = 0.0; // angle between unit end/start tangents, radians
    JunctionKind kind = JunctionKind::smooth;
    bool parametric_c2 = false; // value and both derivatives match across it
};

// Tangent deviation above which a junction counts as a corner.
inline constexpr double kCornerThresholdRad = 1.0 * 3.14159265358979323846 / 180.0;

// Ordered pieces chained end to end over a concatenated parameter range
// starting at 0; each piece keeps its native parameter length.
class PiecewisePath final : public CurveSource {
public:
    explicit PiecewisePath(std::vector<SourcePtr> pieces, bool closed = false,
                           double g0_tolerance = 1e-9);

    Interval domain() const override { return {0.0, offsets_.back()}; }
    int dim() const override { return dim_; }
    int max_order() const override;
    double eval(double t, int axis, int k) const override;
    double eval_sided(double t, int axis, int k, Side side) const override;
    std::vector<double> breakpoints() const override;
    std::optional<double> exact_second_derivative_sup(double a, double b, int axis) const override;
    bool cubic_exact(double a, double b) const override;

    std::size_t piece_count() const { return pieces_.size(); }
    const SourcePtr& piece(std::size_t i) const { return pieces_[i]; }
    bool closed() const { return closed_; }

    // Junctions between consecutive pieces; for closed paths this includes
    // the wrap junction (last piece to first) whose parameter is the domain
    // end.
    const std::vector<Junction>& junctions() const { return junctions_; }

    // Global parameter of the start of piece i.
    double piece_start(std::size_t i) const { return offsets_[i]; }
    double piece_end(std::size_t i) const { return offsets_[i + 1]; }

    // Piece index and local parameter for a global parameter.
    std::pair<std::size_t, double> locate(double t, Side side = Side::below) const;

private:
    std::vector<SourcePtr> pieces_;
    std::vector<double> offsets_; // piece_count()+1 cumulative parameter offsets
    std::vector<Junction> junctions_;
    int dim_;
    bool closed_;
};

// Unit tangent of a 2D source at a domain endpoint (sided).
Vec2 unit_tangent(const CurveSource& src, double t, Side side);

} // namespace toolfit
