#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toolfit/composite.hpp"
#include "toolfit/pipeline.hpp"
#include "toolfit/sources.hpp"

namespace toolfit {

// Parsed path description: version tag, units label, and the built path.
// Piece types: line, bezier, arc, polynomial, function (whitelisted builtin
// names: sin, cos, exp). Consecutive pieces must be G0 within the document's
// declared tolerance.
struct PathDocument {
    std::string version;
    std::string units = "unitless";
    bool closed = false;
    double g0_tolerance = 1e-9;
    std::shared_ptr<const PiecewisePath> path;
};

PathDocument parse_path_document(const std::string& text);
PathDocument load_path_document(const std::string& file);

// Builtin source from a CLI spec string: "poly:c0,c1,..." (ascending
// powers), "sin:scale", "cos:scale", "exp:scale"; all over an explicit
// interval.
SourcePtr builtin_function_source(const std::string& spec, Interval interval);

struct SplineProvenance {
    std::string tool;
    double tolerance = 0.0;
    double radius = 0.0; // 0 when no offsetting was involved
    std::string strategy = "adaptive";
};

// Emitted fit: per curve the partition breakpoints, per-segment knot
// vectors and coefficients, and a merged single-knot-vector view.
struct SplineDocument {
    std::string version;
    int dim = 0;
    SplineProvenance provenance;
    std::vector<CompositeSpline> curves;
};

SplineDocument make_spline_document(const SourceFit& fit, const FitOptions& opts,
                                    double radius);

// Deterministic text form: writing, parsing and writing again is
// byte-identical.
std::string write_spline_document(const SplineDocument& doc);
SplineDocument parse_spline_document(const std::string& text);
SplineDocument load_spline_document(const std::string& file);
void save_text(const std::string& file, const std::string& text);

// Tab-separated audit table, one row per segment:
// curve, segment, t_start, t_end, M, bound, measured, pass.
std::string write_report_table(const std::vector<CurveFit>& curves);

struct ReverifyResult {
    bool pass = true;
    double max_deviation = 0.0;
    double worst_c2_jump = 0.0;
    std::vector<CurveFit> curves; // recomputed reports against the source
};

// Standalone re-verification of an emitted spline document against the
// source document it was built from (redoing offsetting when the
// provenance says so). Throws ParseError when the documents are not
// compatible (dimension, curve count, or domains).
ReverifyResult reverify(const SplineDocument& spline, const PathDocument& path, int samples,
                        std::optional<double> tolerance_override = std::nullopt);

} // namespace toolfit
