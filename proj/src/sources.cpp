#include "toolfit/sources.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "toolfit/errors.hpp"

namespace toolfit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_axis(int axis, int dim) {
    if (axis < 0 || axis >= dim)
        throw std::out_of_range("axis out of range");
}

void check_order(int k, int max_order) {
    if (k < 0 || k > max_order)
        throw std::invalid_argument("derivative order out of range");
}

// p(t) = sum coeffs[j] t^j, k-th derivative.
double poly_eval(const std::vector<double>& coeffs, double t, int k) {
    double sum = 0.0;
    for (std::size_t j = coeffs.size(); j-- > static_cast<std::size_t>(k);) {
        double factor = 1.0;
        for (int m = 0; m < k; ++m) factor *= static_cast<double>(j - m);
        sum = sum * t + factor * coeffs[j];
    }
    return sum;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> out(coeffs.size() - 1);
    for (std::size_t j = 1; j < coeffs.size(); ++j)
        out[j - 1] = static_cast<double>(j) * coeffs[j];
    return out;
}

int poly_degree(const std::vector<double>& coeffs) {
    for (std::size_t j = coeffs.size(); j-- > 0;)
        if (coeffs[j] != 0.0) return static_cast<int>(j);
    return 0;
}

// Real roots of c[0] + c[1] t + c[2] t^2 (degree <= 2).
std::vector<double> quadratic_roots(const std::vector<double>& c) {
    double c0 = c.size() > 0 ? c[0] : 0.0;
    double c1 = c.size() > 1 ? c[1] : 0.0;
    double c2 = c.size() > 2 ? c[2] : 0.0;
    if (c2 == 0.0) {
        if (c1 == 0.0) return {};
        return {-c0 / c1};
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return {};
    double s = std::sqrt(disc);
    double q = c1 >= 0.0 ? -0.5 * (c1 + s) : -0.5 * (c1 - s);
    std::vector<double> roots;
    if (q != 0.0) roots.push_back(c0 / q);
    roots.push_back(q / c2);
    return roots;
}

// Exact max |p''| over [a,b] for polynomials with p''' of degree <= 2,
// i.e. deg p <= 5. Candidates: endpoints and interior roots of p'''.
std::optional<double> poly_sup_abs_second(const std::vector<double>& coeffs, double a, double b) {
    std::vector<double> d2 = poly_derivative(poly_derivative(coeffs));
    std::vector<double> d3 = poly_derivative(d2);
    if (poly_degree(d3) > 2) return std::nullopt;
    double best = std::max(std::abs(poly_eval(d2, a, 0)), std::abs(poly_eval(d2, b, 0)));
    for (double r : quadratic_roots(d3))
        if (r > a && r < b)
            best = std::max(best, std::abs(poly_eval(d2, r, 0)));
    return best;
}

// max |sin| over the angle interval [lo, hi].
double max_abs_sin(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    // any point with sin = +-1 inside? those sit at pi/2 + k*pi
    double k_first = std::ceil((lo - kPi / 2.0) / kPi);
    if (kPi / 2.0 + k_first * kPi <= hi) return 1.0;
    return std::max(std::abs(std::sin(lo)), std::abs(std::sin(hi)));
}

double max_abs_cos(double lo, double hi) {
    return max_abs_sin(lo + kPi / 2.0, hi + kPi / 2.0);
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<double> sided_unit_tangent(const CurveSource& src, double t, Side side) {
    int d = src.dim();
    std::vector<double> v(d);
    double n2 = 0.0;
    for (int axis = 0; axis < d; ++axis) {
        v[axis] = src.eval_sided(t, axis, 1, side);
        n2 += v[axis] * v[axis];
    }
    double n = std::sqrt(n2);
    if (n == 0.0)
        throw GeometryError("zero tangent at junction");
    for (double& c : v) c /= n;
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// LineSource
// ---------------------------------------------------------------------------

LineSource::LineSource(std::vector<double> from, std::vector<double> to)
    : from_(std::move(from)), to_(std::move(to)) {
    if (from_.empty() || from_.size() != to_.size() || from_.size() > 3)
        throw std::invalid_argument("line endpoints must share a dimension of 1 to 3");
}

double LineSource::eval(double t, int axis, int k) const {
    check_axis(axis, dim());
    check_order(k, max_order());
    switch (k) {
    case 0: return from_[axis] + t * (to_[axis] - from_[axis]);
    case 1: return to_[axis] - from_[axis];
    default: return 0.0;
    }
}

// ---------------------------------------------------------------------------
// PolynomialSource
// ---------------------------------------------------------------------------

PolynomialSource::PolynomialSource(std::vector<std::vector<double>> coeffs_per_axis,
                                   Interval domain)
    : coeffs_(std::move(coeffs_per_axis)), domain_(domain) {
    if (coeffs_.empty() || coeffs_.size() > 3)
        throw std::invalid_argument("polynomial source supports 1 to 3 axes");
    for (const auto& c : coeffs_)
        if (c.empty())
            throw std::invalid_argument("empty polynomial coefficient list");
    if (!(domain_.a < domain_.b))
        throw std::invalid_argument("polynomial source needs a nonempty domain");
}

double PolynomialSource::eval(double t, int axis, int k) const {
    check_axis(axis, dim());
    check_order(k, max_order());
    return poly_eval(coeffs_[axis], t, k);
}

std::optional<double> PolynomialSource::exact_second_derivative_sup(double a, double b,
                                                                    int axis) const {
    check_axis(axis, dim());
    return poly_sup_abs_second(coeffs_[axis], a, b);
}

bool PolynomialSource::cubic_exact(double, double) const {
    for (const auto& c : coeffs_)
        if (poly_degree(c) > 3) return false;
    return true;
}

// ---------------------------------------------------------------------------
// SineSource
// ---------------------------------------------------------------------------

SineSource::SineSource(double amplitude, double scale, double phase, Interval domain)
    : amplitude_(amplitude), scale_(scale), phase_(phase), domain_(domain) {
    if (!(domain_.a < domain_.b))
        throw std::invalid_argument("sine source needs a nonempty domain");
}

double SineSource::eval(double t, int axis, int k) const {
    check_axis(axis, 1);
    check_order(k, max_order());
    double factor = 1.0;
    for (int m = 0; m < k; ++m) factor *= scale_;
    return amplitude_ * factor * std::sin(scale_ * t + phase_ + k * kPi / 2.0);
}

std::optional<double> SineSource::exact_second_derivative_sup(double a, double b, int) const {
    double lo = scale_ * a + phase_;
    double hi = scale_ * b + phase_;
    return std::abs(amplitude_) * scale_ * scale_ * max_abs_sin(lo, hi);
}

// ---------------------------------------------------------------------------
// ExpSource
// ---------------------------------------------------------------------------

ExpSource::ExpSource(double amplitude, double scale, Interval domain)
    : amplitude_(amplitude), scale_(scale), domain_(domain) {
    if (!(domain_.a < domain_.b))
        throw std::invalid_argument("exp source needs a nonempty domain");
}

double ExpSource::eval(double t, int axis, int k) const {
    check_axis(axis, 1);
    check_order(k, max_order());
    double factor = 1.0;
    for (int m = 0; m < k; ++m) factor *= scale_;
    return amplitude_ * factor * std::exp(scale_ * t);
}

std::optional<double> ExpSource::exact_second_derivative_sup(double a, double b, int) const {
    double end = scale_ >= 0.0 ? b : a; // |exp| is monotone
    return std::abs(amplitude_) * scale_ * scale_ * std::exp(scale_ * end);
}

// ---------------------------------------------------------------------------
// ArcSource
// ---------------------------------------------------------------------------

ArcSource::ArcSource(Vec2 center, double radius, double angle0, double angle1)
    : center_(center), radius_(radius), angle0_(angle0) {
    if (!(radius_ > 0.0))
        throw std::invalid_argument("arc radius must be positive");
    if (angle0 == angle1)
        throw std::invalid_argument("arc needs a nonempty angle range");
    sweep_ = std::abs(angle1 - angle0);
    dir_ = angle1 > angle0 ? 1.0 : -1.0;
}

double ArcSource::eval(double t, int axis, int k) const {
    check_axis(axis, 2);
    check_order(k, max_order());
    // x^(k) = R dir^k cos(angle + k pi/2), y^(k) likewise with sin
    double shifted = angle_at(t) + k * kPi / 2.0;
    double offset = axis == 0 ? std::cos(shifted) : std::sin(shifted);
    double dir_pow = k % 2 == 0 ? 1.0 : dir_;
    double base = axis == 0 ? center_.x : center_.y;
    return (k == 0 ? base : 0.0) + radius_ * dir_pow * offset;
}

std::optional<double> ArcSource::exact_second_derivative_sup(double a, double b, int axis) const {
    double lo = angle_at(a);
    double hi = angle_at(b);
    return radius_ * (axis == 0 ? max_abs_cos(lo, hi) : max_abs_sin(lo, hi));
}

// ---------------------------------------------------------------------------
// BezierSegment
// ---------------------------------------------------------------------------

BezierSegment::BezierSegment(std::vector<std::vector<double>> control_points)
    : points_(std::move(control_points)) {
    if (points_.size() < 2)
        throw std::invalid_argument("bezier segment needs at least two control points");
    dim_ = static_cast<int>(points_.front().size());
    if (dim_ < 1 || dim_ > 3)
        throw std::invalid_argument("bezier control points must have dimension 1 to 3");
    for (const auto& p : points_)
        if (static_cast<int>(p.size()) != dim_)
            throw std::invalid_argument("bezier control points must share a dimension");
}

std::vector<double> bezier_derivatives(const BezierSegment& seg, double t, int k) {
    if (t < 0.0 || t > 1.0)
        throw DomainError("bezier parameter outside [0,1]");
    if (k < 0)
        throw std::invalid_argument("negative derivative order");
    int n = seg.degree();
    int d = seg.dim();
    if (k > n) return std::vector<double>(d, 0.0);

    // hodograph: k-fold forward differences scaled by n (n-1) ... (n-k+1)
    const auto& pts = seg.control_points();
    std::vector<std::vector<double>> work(pts.begin(), pts.end());
    double scale = 1.0;
    for (int step = 0; step < k; ++step) {
        scale *= static_cast<double>(n - step);
        for (std::size_t i = 0; i + 1 < work.size(); ++i)
            for (int axis = 0; axis < d; ++axis)
                work[i][axis] = work[i + 1][axis] - work[i][axis];
        work.pop_back();
    }
    // de Casteljau on the remaining control points
    while (work.size() > 1) {
        for (std::size_t i = 0; i + 1 < work.size(); ++i)
            for (int axis = 0; axis < d; ++axis)
                work[i][axis] = (1.0 - t) * work[i][axis] + t * work[i + 1][axis];
        work.pop_back();
    }
    for (int axis = 0; axis < d; ++axis) work[0][axis] *= scale;
    return work[0];
}

double BezierSegment::eval(double t, int axis, int k) const {
    check_axis(axis, dim_);
    check_order(k, max_order());
    return bezier_derivatives(*this, t, k)[axis];
}

std::optional<double> BezierSegment::exact_second_derivative_sup(double a, double b,
                                                                 int axis) const {
    int n = degree();
    if (n > 5) return std::nullopt;
    // monomial form: p(t) = sum_j C(n,j) (Delta^j P_0) t^j
    std::vector<double> diffs(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) diffs[i] = points_[i][axis];
    std::vector<double> mono(points_.size());
    mono[0] = diffs[0];
    for (int j = 1; j <= n; ++j) {
        for (std::size_t i = 0; i + j < points_.size(); ++i)
            diffs[i] = diffs[i + 1] - diffs[i];
        mono[j] = binomial(n, j) * diffs[0]; // diffs[0] is now Delta^j P_0
    }
    return poly_sup_abs_second(mono, a, b);
}

// ---------------------------------------------------------------------------
// CallableSource / SubCurve
// ---------------------------------------------------------------------------

double CallableSource::eval(double t, int axis, int k) const {
    check_axis(axis, dim_);
    check_order(k, max_order_);
    return fn_(t, axis, k);
}

SubCurve::SubCurve(SourcePtr base, Interval domain)
    : base_(std::move(base)), domain_(domain) {
    if (!base_)
        throw std::invalid_argument("null base curve");
    Interval full = base_->domain();
    if (!(domain_.a < domain_.b) || domain_.a < full.a - 1e-12 || domain_.b > full.b + 1e-12)
        throw std::invalid_argument("subcurve domain not inside base domain");
}

std::vector<double> SubCurve::breakpoints() const {
    std::vector<double> out;
    for (double t : base_->breakpoints())
        if (t > domain_.a && t < domain_.b) out.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// PiecewisePath
// ---------------------------------------------------------------------------

PiecewisePath::PiecewisePath(std::vector<SourcePtr> pieces, bool closed, double g0_tolerance)
    : pieces_(std::move(pieces)), closed_(closed) {
    if (pieces_.empty())
        throw std::invalid_argument("piecewise path needs at least one piece");
    dim_ = pieces_.front()->dim();
    offsets_.push_back(0.0);
    for (const auto& p : pieces_) {
        if (!p) throw std::invalid_argument("null path piece");
        if (p->dim() != dim_)
            throw std::invalid_argument("path pieces must share a dimension");
        double len = p->domain().length();
        if (!(len > 0.0))
            throw std::invalid_argument("path piece with empty domain");
        offsets_.push_back(offsets_.back() + len);
    }

    auto endpoint_gap = [&](const CurveSource& lhs, const CurveSource& rhs) {
        double gap2 = 0.0;
        for (int axis = 0; axis < dim_; ++axis) {
            double d = lhs.eval(lhs.domain().b, axis, 0) - rhs.eval(rhs.domain().a, axis, 0);
            gap2 += d * d;
        }
        return std::sqrt(gap2);
    };

    std::size_t junction_count = pieces_.size() - 1 + (closed_ ? 1 : 0);
    for (std::size_t j = 0; j < junction_count; ++j) {
        const CurveSource& lhs = *pieces_[j];
        const CurveSource& rhs = *pieces_[(j + 1) % pieces_.size()];
        if (endpoint_gap(lhs, rhs) > g0_tolerance)
            throw std::invalid_argument("path pieces are not G0 at junction " +
                                        std::to_string(j));
        Junction jc;
        jc.parameter = offsets_[j + 1];
        auto u = sided_unit_tangent(lhs, lhs.domain().b, Side::below);
        auto v = sided_unit_tangent(rhs, rhs.domain().a, Side::above);
        double c = 0.0;
        for (int axis = 0; axis < dim_; ++axis) c += u[axis] * v[axis];
        jc.turning_angle = std::acos(std::clamp(c, -1.0, 1.0));
        jc.kind = jc.turning_angle > kCornerThresholdRad ? JunctionKind::corner
                                                         : JunctionKind::smooth;
        jc.parametric_c2 = true;
        for (int k = 0; k <= 2 && jc.parametric_c2; ++k)
            for (int axis = 0; axis < dim_; ++axis) {
                double l = lhs.eval_sided(lhs.domain().b, axis, k, Side::below);
                double r = rhs.eval_sided(rhs.domain().a, axis, k, Side::above);
                if (std::abs(l - r) > 1e-9 * std::max({1.0, std::abs(l), std::abs(r)})) {
                    jc.parametric_c2 = false;
                    break;
                }
            }
        junctions_.push_back(jc);
    }
}

std::pair<std::size_t, double> PiecewisePath::locate(double t, Side side) const {
    if (t < offsets_.front() - 1e-12 || t > offsets_.back() + 1e-12)
        throw DomainError("parameter outside path domain");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), t);
    std::size_t j = it == offsets_.begin() ? 0 : static_cast<std::size_t>(it - offsets_.begin() - 1);
    if (j >= pieces_.size()) j = pieces_.size() - 1;
    if (side == Side::below && j > 0 && t == offsets_[j]) --j;
    double local = pieces_[j]->domain().a + (t - offsets_[j]);
    Interval d = pieces_[j]->domain();
    local = std::clamp(local, d.a, d.b);
    return {j, local};
}

int PiecewisePath::max_order() const {
    int m = 3;
    for (const auto& p : pieces_) m = std::min(m, p->max_order());
    return m;
}

double PiecewisePath::eval(double t, int axis, int k) const {
    return eval_sided(t, axis, k, Side::above);
}

double PiecewisePath::eval_sided(double t, int axis, int k, Side side) const {
    auto [j, local] = locate(t, side);
    return pieces_[j]->eval_sided(local, axis, k, side);
}

std::vector<double> PiecewisePath::breakpoints() const {
    std::vector<double> out(offsets_.begin() + 1, offsets_.end() - 1);
    return out;
}

std::optional<double> PiecewisePath::exact_second_derivative_sup(double a, double b,
                                                                 int axis) const {
    auto [ja, la] = locate(a, Side::above);
    auto [jb, lb] = locate(b, Side::below);
    double best = 0.0;
    for (std::size_t j = ja; j <= jb; ++j) {
        Interval d = pieces_[j]->domain();
        double lo = j == ja ? la : d.a;
        double hi = j == jb ? lb : d.b;
        if (!(lo < hi)) continue;
        auto sup = pieces_[j]->exact_second_derivative_sup(lo, hi, axis);
        if (!sup) return std::nullopt;
        best = std::max(best, *sup);
    }
    return best;
}

bool PiecewisePath::cubic_exact(double a, double b) const {
    auto [ja, la] = locate(a, Side::above);
    auto [jb, lb] = locate(b, Side::below);
    if (ja != jb) return false; // junctions break polynomial structure
    return pieces_[ja]->cubic_exact(la, lb);
}

Vec2 unit_tangent(const CurveSource& src, double t, Side side) {
    if (src.dim() != 2)
        throw std::invalid_argument("unit_tangent requires a planar source");
    Vec2 v{src.eval_sided(t, 0, 1, side), src.eval_sided(t, 1, 1, side)};
    double n = norm(v);
    if (n == 0.0)
        throw GeometryError("zero tangent");
    return {v.x / n, v.y / n};
}

} // namespace toolfit
