#include "toolfit/offset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "toolfit/errors.hpp"

namespace toolfit {

namespace {
constexpr double kRegularityEps = 1e-12;
}

OffsetCurve::OffsetCurve(SourcePtr base, double radius)
    : base_(std::move(base)), radius_(radius) {
    if (!base_)
        throw std::invalid_argument("null offset base");
    if (base_->dim() != 2)
        throw std::invalid_argument("offset base must be planar");
    if (radius_ == 0.0)
        throw std::invalid_argument("offset radius must be nonzero");
    if (base_->max_order() < 3)
        throw std::invalid_argument("offset base must supply third derivatives");
}

Vec2 OffsetCurve::base_derivative(double t, int k, Side side) const {
    return {base_->eval_sided(t, 0, k, side), base_->eval_sided(t, 1, k, side)};
}

double OffsetCurve::eval(double t, int axis, int k) const {
    return eval_sided(t, axis, k, Side::below);
}

double OffsetCurve::eval_sided(double t, int axis, int k, Side side) const {
    if (axis < 0 || axis >= 2)
        throw std::out_of_range("axis out of range");
    if (k < 0 || k > max_order())
        throw std::invalid_argument("derivative order out of range for offset");

    Vec2 c1 = base_derivative(t, 1, side);
    double a = dot(c1, c1);
    double s = std::sqrt(a);
    if (s <= kRegularityEps)
        throw GeometryError("offset base has a degenerate tangent");

    Vec2 value;
    if (k == 0) {
        Vec2 c0 = base_derivative(t, 0, side);
        value = c0 + radius_ / s * perp(c1);
    } else if (k == 1) {
        Vec2 c2 = base_derivative(t, 2, side);
        double tc = dot(c1, c2);
        Vec2 n1 = perp(c2 * std::pow(a, -0.5) - c1 * (tc * std::pow(a, -1.5)));
        value = c1 + radius_ * n1;
    } else {
        Vec2 c2 = base_derivative(t, 2, side);
        Vec2 c3 = base_derivative(t, 3, side);
        double tc = dot(c1, c2);
        double w = dot(c2, c2) + dot(c1, c3);
        Vec2 inner = c3 * std::pow(a, -0.5)            //
                     - c2 * (2.0 * tc * std::pow(a, -1.5)) //
                     - c1 * (w * std::pow(a, -1.5))        //
                     + c1 * (3.0 * tc * tc * std::pow(a, -2.5));
        value = c2 + radius_ * perp(inner);
    }
    return axis == 0 ? value.x : value.y;
}

double OffsetCurve::signed_curvature(double t, Side side) const {
    Vec2 c1 = base_derivative(t, 1, side);
    Vec2 c2 = base_derivative(t, 2, side);
    double s = norm(c1);
    if (s <= kRegularityEps)
        throw GeometryError("offset base has a degenerate tangent");
    return cross(c1, c2) / (s * s * s);
}

bool OffsetCurve::locally_degenerate(double t, Side side) const {
    return 1.0 - radius_ * signed_curvature(t, side) <= 0.0;
}

std::optional<double> OffsetCurve::exact_second_derivative_sup(double a, double b,
                                                               int axis) const {
    // the one closed form worth having: offsets of straight pieces are
    // straight
    if (cubic_exact(a, b)) return 0.0;
    (void)axis;
    return std::nullopt;
}

bool OffsetCurve::cubic_exact(double a, double b) const {
    for (int axis = 0; axis < 2; ++axis) {
        auto sup = base_->exact_second_derivative_sup(a, b, axis);
        if (!sup || *sup != 0.0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// corner compensation
// ---------------------------------------------------------------------------

namespace {

Vec2 point_at(const CurveSource& src, double t, Side side) {
    return {src.eval_sided(t, 0, 0, side), src.eval_sided(t, 1, 0, side)};
}

Vec2 derivative_at(const CurveSource& src, double t, Side side) {
    return {src.eval_sided(t, 0, 1, side), src.eval_sided(t, 1, 1, side)};
}

std::shared_ptr<LineSource> make_line(Vec2 from, Vec2 to) {
    return std::make_shared<LineSource>(std::vector<double>{from.x, from.y},
                                        std::vector<double>{to.x, to.y});
}

// Intersection of the forward extension of (e1, u) with the backward
// extension of (e2, v); returns the extension lengths along u and -v.
struct RayMeet {
    Vec2 point;
    double s = 0.0;
    double w = 0.0;
};

RayMeet meet_extensions(Vec2 e1, Vec2 u, Vec2 e2, Vec2 v) {
    double c = cross(u, v);
    Vec2 g = e2 - e1;
    RayMeet m;
    m.s = cross(g, v) / c;
    m.w = -cross(g, u) / c;
    m.point = e1 + m.s * u;
    return m;
}

// O_left(s) = O_right(w) near the junction, by damped Newton with the
// analytic offset derivatives.
std::pair<double, double> intersect_offsets(const OffsetCurve& left, const OffsetCurve& right,
                                            int junction) {
    Interval dl = left.domain();
    Interval dr = right.domain();
    double s = dl.b;
    double w = dr.a;
    double scale = std::max(1.0, std::abs(left.radius()));
    for (int iter = 0; iter < 80; ++iter) {
        Side ls = s >= dl.b ? Side::below : Side::above;
        Side rs = w <= dr.a ? Side::above : Side::below;
        Vec2 g = point_at(left, s, ls) - point_at(right, w, rs);
        if (norm(g) <= 1e-13 * scale) return {s, w};
        Vec2 j0 = derivative_at(left, s, ls);
        Vec2 j1 = -1.0 * derivative_at(right, w, rs);
        double det = cross(j0, j1);
        if (std::abs(det) < 1e-15)
            break;
        // solve [j0 j1] (ds, dw)^T = -g
        double ds = cross(-1.0 * g, j1) / det;
        double dw = cross(j0, -1.0 * g) / det;
        // damp into the domains
        double limit = 0.5 * std::max(dl.length(), dr.length());
        ds = std::clamp(ds, -limit, limit);
        dw = std::clamp(dw, -limit, limit);
        s = std::clamp(s + ds, dl.a, dl.b);
        w = std::clamp(w + dw, dr.a, dr.b);
    }
    throw GeometryError("inside corner: adjacent offsets do not intersect near junction " +
                            std::to_string(junction),
                        junction);
}

} // namespace

PiecewisePath corner_compensation(const PiecewisePath& path, double radius,
                                  const CompensationOptions& opts) {
    if (path.dim() != 2)
        throw std::invalid_argument("corner compensation requires a planar path");
    if (radius == 0.0)
        throw std::invalid_argument("offset radius must be nonzero");

    std::size_t n = path.piece_count();
    std::vector<std::shared_ptr<const OffsetCurve>> offsets;
    offsets.reserve(n);
    std::vector<Interval> trims;
    for (std::size_t i = 0; i < n; ++i) {
        offsets.push_back(std::make_shared<OffsetCurve>(path.piece(i), radius));
        trims.push_back(offsets.back()->domain());
    }

    // inserted pieces after piece j (junction j)
    std::vector<std::vector<SourcePtr>> inserts(path.junctions().size());

    for (std::size_t j = 0; j < path.junctions().size(); ++j) {
        const Junction& jc = path.junctions()[j];
        std::size_t lhs = j;
        std::size_t rhs = (j + 1) % n;
        const OffsetCurve& ol = *offsets[lhs];
        const OffsetCurve& orr = *offsets[rhs];

        if (jc.turning_angle <= opts.corner_threshold)
            continue; // handled by the gap bridge below

        if (jc.turning_angle >= opts.reversal_limit)
            throw GeometryError("no square corner exists at a reversal (junction " +
                                    std::to_string(j) + ")",
                                static_cast<int>(j));

        const CurveSource& bl = *path.piece(lhs);
        const CurveSource& br = *path.piece(rhs);
        Vec2 u = unit_tangent(bl, bl.domain().b, Side::below);
        Vec2 v = unit_tangent(br, br.domain().a, Side::above);
        double turn = cross(u, v);
        bool outside = turn * radius < 0.0;

        if (outside) {
            Vec2 e1 = point_at(ol, ol.domain().b, Side::below);
            Vec2 e2 = point_at(orr, orr.domain().a, Side::above);
            RayMeet m = meet_extensions(e1, u, e2, v);
            if (!(m.s > 0.0) || !(m.w > 0.0))
                throw GeometryError("square corner extensions do not meet at junction " +
                                        std::to_string(j),
                                    static_cast<int>(j));
            inserts[j].push_back(make_line(e1, m.point));
            inserts[j].push_back(make_line(m.point, e2));
        } else {
            auto [s, w] = intersect_offsets(ol, orr, static_cast<int>(j));
            trims[lhs].b = std::min(trims[lhs].b, s);
            trims[rhs].a = std::max(trims[rhs].a, w);
        }
    }

    double min_len = 1e-9;
    for (std::size_t i = 0; i < n; ++i)
        if (!(trims[i].length() > min_len))
            throw GeometryError("piece " + std::to_string(i) +
                                    " too short to trim at its corners",
                                static_cast<int>(i));

    std::vector<SourcePtr> pieces;
    auto trimmed_piece = [&](std::size_t i) -> SourcePtr {
        if (trims[i].a == offsets[i]->domain().a && trims[i].b == offsets[i]->domain().b)
            return offsets[i];
        return std::make_shared<SubCurve>(offsets[i], trims[i]);
    };
    auto bridge_gap = [&](const SourcePtr& prev, const SourcePtr& next) -> SourcePtr {
        Vec2 e = point_at(*prev, prev->domain().b, Side::below);
        Vec2 s = point_at(*next, next->domain().a, Side::above);
        if (norm(s - e) > opts.g0_tolerance) return make_line(e, s);
        return nullptr;
    };

    for (std::size_t i = 0; i < n; ++i) {
        SourcePtr cur = trimmed_piece(i);
        if (!pieces.empty())
            if (auto b = bridge_gap(pieces.back(), cur)) pieces.push_back(b);
        pieces.push_back(cur);
        if (i < inserts.size())
            for (const auto& ins : inserts[i]) {
                if (auto b = bridge_gap(pieces.back(), ins)) pieces.push_back(b);
                pieces.push_back(ins);
            }
    }
    if (path.closed()) {
        if (auto b = bridge_gap(pieces.back(), pieces.front())) pieces.push_back(b);
    }

    return PiecewisePath(std::move(pieces), path.closed(), opts.g0_tolerance);
}

} // namespace toolfit
