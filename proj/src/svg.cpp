#include "toolfit/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace toolfit {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::vector<Vec2> sample_polyline(const CurveSource& source, int samples) {
    samples = std::max(samples, 2);
    Interval d = source.domain();
    std::vector<Vec2> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = i == samples - 1 ? d.b : d.a + d.length() * i / (samples - 1);
        if (source.dim() == 1)
            pts.push_back({t, source.eval(t, 0, 0)});
        else
            pts.push_back({source.eval(t, 0, 0), source.eval(t, 1, 0)});
    }
    return pts;
}

std::vector<Vec2> sample_polyline(const CompositeSpline& comp, int samples) {
    samples = std::max(samples, 2);
    Interval d = comp.domain();
    std::vector<Vec2> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = i == samples - 1 ? d.b : d.a + d.length() * i / (samples - 1);
        if (comp.dim() == 1)
            pts.push_back({t, comp.eval(t, 0, 0)});
        else
            pts.push_back({comp.eval(t, 0, 0), comp.eval(t, 1, 0)});
    }
    return pts;
}

SvgPolyline source_layer(const CurveSource& source, int samples) {
    return {sample_polyline(source, samples), "source", "#c62828", 1.5};
}

SvgPolyline fitted_layer(const CompositeSpline& comp, int samples) {
    return {sample_polyline(comp, samples), "fitted", "#f9a825", 1.0};
}

std::string render_svg(const std::vector<SvgPolyline>& layers, int pixel_width) {
    double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
    double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
    for (const auto& layer : layers)
        for (const Vec2& p : layer.points) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    if (!(lo_x <= hi_x)) {
        lo_x = lo_y = 0.0;
        hi_x = hi_y = 1.0;
    }
    double span_x = std::max(hi_x - lo_x, 1e-12);
    double span_y = std::max(hi_y - lo_y, 1e-12);
    double margin = 0.05 * std::max(span_x, span_y);
    double scale = pixel_width / (span_x + 2.0 * margin);
    double height = (span_y + 2.0 * margin) * scale;
    double stroke_scale = (span_x + 2.0 * margin) / pixel_width;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           num(pixel_width) + "\" height=\"" + num(height) + "\" viewBox=\"" +
           num(lo_x - margin) + " " + num(-(hi_y + margin)) + " " + num(span_x + 2 * margin) +
           " " + num(span_y + 2 * margin) + "\">\n";
    for (const auto& layer : layers) {
        out += "  <polyline class=\"" + layer.cls + "\" fill=\"none\" stroke=\"" + layer.stroke +
               "\" stroke-width=\"" + num(layer.width * stroke_scale) + "\" points=\"";
        for (std::size_t i = 0; i < layer.points.size(); ++i) {
            if (i) out += ' ';
            out += num(layer.points[i].x) + "," + num(-layer.points[i].y);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace toolfit
