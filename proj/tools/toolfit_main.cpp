#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "toolfit/documents.hpp"
#include "toolfit/errors.hpp"
#include "toolfit/pipeline.hpp"
#include "toolfit/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitGeometry = 4;
constexpr int kExitVerification = 5;

struct CommonArgs {
    double tolerance = 1e-3;
    std::string strategy = "adaptive";
    int samples = 64;
    std::string out_path;
    std::string report_path;
    std::string svg_path;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool tolerance_required) {
    auto* t = cmd->add_option("--tolerance", args.tolerance, "maximum allowed deviation d");
    if (tolerance_required) t->required();
    cmd->add_option("--strategy", args.strategy, "step strategy")
        ->check(CLI::IsMember({"adaptive", "uniform"}))
        ->capture_default_str();
    cmd->add_option("--samples", args.samples, "verification samples per segment")
        ->capture_default_str();
    cmd->add_option("--out", args.out_path, "spline document output file");
    cmd->add_option("--report", args.report_path, "error report table output file");
    cmd->add_option("--svg", args.svg_path, "SVG overlay output file");
}

toolfit::FitOptions make_options(const CommonArgs& args) {
    toolfit::FitOptions opts;
    opts.tolerance = args.tolerance;
    opts.strategy = args.strategy == "uniform" ? toolfit::FitStrategy::uniform
                                               : toolfit::FitStrategy::adaptive;
    opts.report_samples = std::max(16, args.samples);
    return opts;
}

toolfit::Interval parse_interval(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw toolfit::ParseError("interval must be given as a:b");
    try {
        double a = std::stod(text.substr(0, colon));
        double b = std::stod(text.substr(colon + 1));
        if (!(a < b))
            throw toolfit::ParseError("interval needs a < b");
        return {a, b};
    } catch (const std::logic_error&) {
        throw toolfit::ParseError("bad interval '" + text + "'");
    }
}

void emit_outputs(const toolfit::SourceFit& fit, const toolfit::FitOptions& opts, double radius,
                  const CommonArgs& args) {
    using namespace toolfit;
    for (double t : fit.degenerate_offset_params)
        std::cerr << "warning: offset locally self-intersecting near parameter " << t << "\n";
    if (!args.out_path.empty())
        save_text(args.out_path, write_spline_document(make_spline_document(fit, opts, radius)));
    std::string table = write_report_table(fit.curves);
    if (!args.report_path.empty())
        save_text(args.report_path, table);
    else
        std::cout << table;
    if (!args.svg_path.empty()) {
        std::vector<SvgPolyline> layers;
        layers.push_back(source_layer(*fit.fitted_source, 512));
        for (const CurveFit& c : fit.curves) layers.push_back(fitted_layer(c.spline, 256));
        save_text(args.svg_path, render_svg(layers));
    }
    std::size_t segments = 0;
    for (const CurveFit& c : fit.curves) segments += c.spline.segment_count();
    std::cerr << "fitted " << fit.curves.size() << " curve(s), " << segments
              << " segment(s), max deviation ";
    double worst = 0.0;
    for (const CurveFit& c : fit.curves) worst = std::max(worst, c.deviation.max_deviation);
    std::cerr << worst << "\n";
}

int run(int argc, char** argv) {
    using namespace toolfit;

    CLI::App app{"C2 cubic B-spline fitting of machining paths and their offsets"};
    app.require_subcommand(1);

    // --- interp ---------------------------------------------------------
    auto* interp = app.add_subcommand("interp", "fit a path document or builtin function");
    std::string interp_input;
    std::string function_spec;
    std::string interval_text;
    CommonArgs interp_args;
    interp->add_option("input", interp_input, "path document (JSON)");
    interp->add_option("--function", function_spec,
                       "builtin source: poly:c0,c1,... | sin:w | cos:w | exp:w");
    interp->add_option("--interval", interval_text, "domain a:b for --function");
    add_common(interp, interp_args, true);

    // --- offset-fit ------------------------------------------------------
    auto* offset_fit =
        app.add_subcommand("offset-fit", "offset a planar path, compensate corners, fit");
    std::string offset_input;
    double radius = 0.0;
    CommonArgs offset_args;
    offset_fit->add_option("input", offset_input, "path document (JSON)")->required();
    offset_fit->add_option("--radius", radius, "tool radius (sign picks the side)")->required();
    add_common(offset_fit, offset_args, true);

    // --- report ----------------------------------------------------------
    auto* report = app.add_subcommand("report", "re-verify an emitted spline document");
    std::string report_spline, report_source, report_out;
    int report_samples = 128;
    double report_tolerance = 0.0;
    report->add_option("spline", report_spline, "spline document (JSON)")->required();
    report->add_option("source", report_source, "source path document (JSON)")->required();
    report->add_option("--samples", report_samples, "deviation samples per segment")
        ->capture_default_str();
    report->add_option("--tolerance", report_tolerance,
                       "override the provenance tolerance");
    report->add_option("--out", report_out, "write the table here instead of stdout");

    // --- render ----------------------------------------------------------
    auto* render = app.add_subcommand("render", "render documents to SVG without fitting");
    std::string render_path, render_spline, render_svg_out;
    int render_samples = 512;
    render->add_option("--path", render_path, "path document to draw");
    render->add_option("--spline", render_spline, "spline document to draw");
    render->add_option("--svg", render_svg_out, "SVG output file")->required();
    render->add_option("--samples", render_samples, "samples per curve")->capture_default_str();

    try {
        app.parse(argc, argv);

        if (interp->parsed()) {
            FitOptions opts = make_options(interp_args);
            SourcePtr source;
            if (!function_spec.empty()) {
                if (!interp_input.empty())
                    throw ParseError("give either an input document or --function, not both");
                if (interval_text.empty())
                    throw ParseError("--function needs --interval a:b");
                source = builtin_function_source(function_spec, parse_interval(interval_text));
            } else if (!interp_input.empty()) {
                source = load_path_document(interp_input).path;
            } else {
                throw ParseError("interp needs an input document or --function");
            }
            SourceFit fit = fit_source(source, opts);
            emit_outputs(fit, opts, 0.0, interp_args);
            return kExitOk;
        }

        if (offset_fit->parsed()) {
            FitOptions opts = make_options(offset_args);
            PathDocument doc = load_path_document(offset_input);
            if (doc.path->dim() != 2)
                throw ParseError("offset-fit needs a planar path document");
            if (radius == 0.0)
                throw ParseError("offset radius must be nonzero");
            SourceFit fit = fit_offset(*doc.path, radius, opts);
            emit_outputs(fit, opts, radius, offset_args);
            return kExitOk;
        }

        if (report->parsed()) {
            SplineDocument spline = load_spline_document(report_spline);
            PathDocument source = load_path_document(report_source);
            std::optional<double> override_d;
            if (report->count("--tolerance")) override_d = report_tolerance;
            ReverifyResult result = reverify(spline, source, report_samples, override_d);
            std::string table = write_report_table(result.curves);
            if (!report_out.empty())
                save_text(report_out, table);
            else
                std::cout << table;
            std::cerr << "max deviation " << result.max_deviation << ", worst C2 jump "
                      << result.worst_c2_jump << "\n";
            return result.pass ? kExitOk : kExitVerification;
        }

        if (render->parsed()) {
            std::vector<SvgPolyline> layers;
            if (!render_path.empty())
                layers.push_back(source_layer(*load_path_document(render_path).path,
                                              render_samples));
            if (!render_spline.empty())
                for (const CompositeSpline& c : load_spline_document(render_spline).curves)
                    layers.push_back(fitted_layer(c, render_samples));
            if (layers.empty())
                throw ParseError("render needs --path and/or --spline");
            save_text(render_svg_out, render_svg(layers));
            return kExitOk;
        }
        return kExitParse;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ToleranceError& e) {
        std::cerr << "tolerance unachievable: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return kExitGeometry;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
