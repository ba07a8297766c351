#pragma once

#include <string>
#include <vector>

#include "toolfit/composite.hpp"
#include "toolfit/sources.hpp"
#include "toolfit/vec2.hpp"

namespace toolfit {

struct SvgPolyline {
    std::vector<Vec2> points;
    std::string cls;    // "source" or "fitted"
    std::string stroke; // CSS color
    double width = 1.0;
};

// SVG 1.1 document with one <polyline> per layer, y flipped so +y is up.
std::string render_svg(const std::vector<SvgPolyline>& layers, int pixel_width = 800);

// Dense polyline of a source. Planar and spatial curves plot (x, y);
// scalar functions plot (t, F(t)).
std::vector<Vec2> sample_polyline(const CurveSource& source, int samples);
std::vector<Vec2> sample_polyline(const CompositeSpline& comp, int samples);

// Source in red, fitted curves in gold.
SvgPolyline source_layer(const CurveSource& source, int samples);
SvgPolyline fitted_layer(const CompositeSpline& comp, int samples);

} // namespace toolfit
