#include "toolfit/documents.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "toolfit/errors.hpp"
#include "toolfit/hermite.hpp"

namespace toolfit {

using nlohmann::json;

namespace {

constexpr const char* kPathVersion = "toolfit-path/1";
constexpr const char* kSplineVersion = "toolfit-spline/1";
constexpr const char* kToolName = "toolfit 0.1.0";
constexpr double kPi = 3.14159265358979323846;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError("document is not valid JSON");
    return j;
}

std::vector<double> number_list(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string("expected a nonempty number array for ") + what);
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number())
            throw ParseError(std::string("non-numeric entry in ") + what);
        out.push_back(v.get<double>());
    }
    return out;
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

Interval interval_field(const json& j, const char* key) {
    if (!j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    auto v = number_list(j[key], key);
    if (v.size() != 2 || !(v[0] < v[1]))
        throw ParseError(std::string("field '") + key + "' must be [a, b] with a < b");
    return {v[0], v[1]};
}

SourcePtr parse_piece(const json& p, std::size_t index) {
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("piece " + std::to_string(index) + ": " + msg);
    };
    if (!p.is_object() || !p.contains("type") || !p["type"].is_string())
        fail("missing type");
    std::string type = p["type"].get<std::string>();
    try {
        if (type == "line") {
            return std::make_shared<LineSource>(number_list(p.at("from"), "from"),
                                                number_list(p.at("to"), "to"));
        }
        if (type == "bezier") {
            if (!p.contains("points") || !p["points"].is_array())
                fail("missing control points");
            std::vector<std::vector<double>> pts;
            for (const auto& q : p["points"]) pts.push_back(number_list(q, "points"));
            return std::make_shared<BezierSegment>(std::move(pts));
        }
        if (type == "arc") {
            auto c = number_list(p.at("center"), "center");
            if (c.size() != 2) fail("arc center must be planar");
            return std::make_shared<ArcSource>(Vec2{c[0], c[1]}, number_field(p, "radius"),
                                               number_field(p, "start_angle"),
                                               number_field(p, "end_angle"));
        }
        if (type == "polynomial") {
            if (!p.contains("coeffs") || !p["coeffs"].is_array())
                fail("missing coefficient lists");
            std::vector<std::vector<double>> coeffs;
            for (const auto& q : p["coeffs"]) coeffs.push_back(number_list(q, "coeffs"));
            return std::make_shared<PolynomialSource>(std::move(coeffs),
                                                      interval_field(p, "interval"));
        }
        if (type == "function") {
            if (!p.contains("name") || !p["name"].is_string())
                fail("missing builtin name");
            std::string name = p["name"].get<std::string>();
            double amplitude = p.contains("amplitude") ? number_field(p, "amplitude") : 1.0;
            double scale = p.contains("scale") ? number_field(p, "scale") : 1.0;
            Interval iv = interval_field(p, "interval");
            if (name == "sin") return std::make_shared<SineSource>(amplitude, scale, 0.0, iv);
            if (name == "cos")
                return std::make_shared<SineSource>(amplitude, scale, kPi / 2.0, iv);
            if (name == "exp") return std::make_shared<ExpSource>(amplitude, scale, iv);
            fail("unknown builtin '" + name + "' (whitelist: sin, cos, exp)");
        }
        fail("unknown piece type '" + type + "'");
    } catch (const json::exception& e) {
        fail(e.what());
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return nullptr; // unreachable
}

} // namespace

PathDocument parse_path_document(const std::string& text) {
    json j = parse_json(text);
    PathDocument doc;
    if (!j.contains("version") || !j["version"].is_string())
        throw ParseError("path document missing version tag");
    doc.version = j["version"].get<std::string>();
    if (doc.version != kPathVersion)
        throw ParseError("unsupported path document version '" + doc.version + "'");
    if (j.contains("units")) doc.units = j["units"].get<std::string>();
    if (j.contains("closed")) doc.closed = j["closed"].get<bool>();
    if (j.contains("g0_tolerance")) doc.g0_tolerance = number_field(j, "g0_tolerance");
    if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
        throw ParseError("path document needs a nonempty pieces array");

    std::vector<SourcePtr> pieces;
    for (std::size_t i = 0; i < j["pieces"].size(); ++i)
        pieces.push_back(parse_piece(j["pieces"][i], i));
    try {
        doc.path = std::make_shared<PiecewisePath>(std::move(pieces), doc.closed,
                                                   doc.g0_tolerance);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return doc;
}

PathDocument load_path_document(const std::string& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open path document: " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_path_document(buf.str());
}

SourcePtr builtin_function_source(const std::string& spec, Interval interval) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse_one = [&](double fallback) {
        if (args.empty()) return fallback;
        try {
            std::size_t used = 0;
            double v = std::stod(args, &used);
            if (used != args.size()) throw ParseError("trailing characters in '" + spec + "'");
            return v;
        } catch (const std::logic_error&) {
            throw ParseError("bad numeric argument in '" + spec + "'");
        }
    };
    if (name == "poly") {
        std::vector<double> coeffs;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                coeffs.push_back(std::stod(item));
            } catch (const std::logic_error&) {
                throw ParseError("bad coefficient in '" + spec + "'");
            }
        }
        if (coeffs.empty())
            throw ParseError("poly needs at least one coefficient");
        return std::make_shared<PolynomialSource>(
            std::vector<std::vector<double>>{std::move(coeffs)}, interval);
    }
    if (name == "sin") return std::make_shared<SineSource>(1.0, parse_one(1.0), 0.0, interval);
    if (name == "cos")
        return std::make_shared<SineSource>(1.0, parse_one(1.0), kPi / 2.0, interval);
    if (name == "exp") return std::make_shared<ExpSource>(1.0, parse_one(1.0), interval);
    throw ParseError("unknown builtin function '" + name +
                     "' (whitelist: poly, sin, cos, exp)");
}

SplineDocument make_spline_document(const SourceFit& fit, const FitOptions& opts,
                                    double radius) {
    SplineDocument doc;
    doc.version = kSplineVersion;
    doc.dim = fit.fitted_source->dim();
    doc.provenance.tool = kToolName;
    doc.provenance.tolerance = opts.tolerance;
    doc.provenance.radius = radius;
    doc.provenance.strategy = opts.strategy == FitStrategy::adaptive ? "adaptive" : "uniform";
    for (const CurveFit& c : fit.curves) doc.curves.push_back(c.spline);
    return doc;
}

std::string write_spline_document(const SplineDocument& doc) {
    json j;
    j["version"] = doc.version;
    j["dim"] = doc.dim;
    j["provenance"] = {{"tool", doc.provenance.tool},
                       {"tolerance", doc.provenance.tolerance},
                       {"radius", doc.provenance.radius},
                       {"strategy", doc.provenance.strategy}};
    json curves = json::array();
    for (const CompositeSpline& comp : doc.curves) {
        json c;
        c["breakpoints"] = comp.partition().breakpoints();
        json segments = json::array();
        for (std::size_t i = 0; i < comp.segment_count(); ++i) {
            json s;
            const auto kv = comp.segment(i).knots().values();
            s["knots"] = std::vector<double>(kv.begin(), kv.end());
            json coeffs = json::array();
            for (int axis = 0; axis < comp.dim(); ++axis) coeffs.push_back(comp.segment(i).coeffs(axis));
            s["coeffs"] = coeffs;
            if (!comp.segment(i).end_scaled_data().empty()) {
                json ends = json::array();
                for (const auto& d : comp.segment(i).end_scaled_data())
                    ends.push_back(std::vector<double>(d.begin(), d.end()));
                s["ends"] = ends;
            }
            segments.push_back(s);
        }
        c["segments"] = segments;
        json merged;
        KnotVector merged_kv = merged_knots(comp);
        const auto mk = merged_kv.values();
        merged["knots"] = std::vector<double>(mk.begin(), mk.end());
        json mcoeffs = json::array();
        for (int axis = 0; axis < comp.dim(); ++axis) mcoeffs.push_back(merged_coeffs(comp, axis));
        merged["coeffs"] = mcoeffs;
        c["merged"] = merged;
        curves.push_back(c);
    }
    j["curves"] = curves;
    return j.dump(2) + "\n";
}

SplineDocument parse_spline_document(const std::string& text) {
    json j = parse_json(text);
    SplineDocument doc;
    try {
        doc.version = j.at("version").get<std::string>();
        if (doc.version != kSplineVersion)
            throw ParseError("unsupported spline document version '" + doc.version + "'");
        doc.dim = j.at("dim").get<int>();
        const json& prov = j.at("provenance");
        doc.provenance.tool = prov.at("tool").get<std::string>();
        doc.provenance.tolerance = prov.at("tolerance").get<double>();
        doc.provenance.radius = prov.at("radius").get<double>();
        doc.provenance.strategy = prov.at("strategy").get<std::string>();
        for (const auto& c : j.at("curves")) {
            Partition partition(number_list(c.at("breakpoints"), "breakpoints"));
            std::vector<SegmentSpline> segments;
            for (const auto& s : c.at("segments")) {
                KnotVector knots(number_list(s.at("knots"), "knots"));
                std::vector<std::vector<double>> coeffs;
                for (const auto& axis : s.at("coeffs"))
                    coeffs.push_back(number_list(axis, "coeffs"));
                if (s.contains("ends")) {
                    // derivative curves in data form; position coefficients
                    // from the document stay authoritative
                    std::vector<HermiteEndData> data;
                    for (const auto& e : s.at("ends")) {
                        auto v = number_list(e, "ends");
                        if (v.size() != 6)
                            throw ParseError("segment end data needs six values per axis");
                        data.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
                    }
                    Interval iv{knots.front(), knots.back()};
                    auto [first, second] = derivative_curves_from_end_data(iv, data);
                    std::vector<std::array<double, 6>> raw;
                    for (const auto& d : data)
                        raw.push_back({d.f00, d.f01, d.f02, d.f10, d.f11, d.f12});
                    segments.emplace_back(BSplineCurve(std::move(knots), 3, std::move(coeffs)),
                                          std::move(first), std::move(second), std::move(raw));
                } else {
                    segments.emplace_back(std::move(knots), std::move(coeffs));
                }
            }
            doc.curves.emplace_back(std::move(partition), std::move(segments));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("spline document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("spline document: ") + e.what());
    }
    if (doc.curves.empty())
        throw ParseError("spline document has no curves");
    for (const auto& comp : doc.curves)
        if (comp.dim() != doc.dim)
            throw ParseError("spline document dim does not match its curves");
    return doc;
}

SplineDocument load_spline_document(const std::string& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open spline document: " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spline_document(buf.str());
}

void save_text(const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + file);
    out << text;
}

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::string write_report_table(const std::vector<CurveFit>& curves) {
    std::string out = "curve\tsegment\tt_start\tt_end\tM\tbound\tmeasured\tpass\n";
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        for (const SegmentReportRow& row : curves[ci].rows) {
            out += std::to_string(ci) + '\t' + std::to_string(row.index) + '\t' +
                   format_number(row.interval.a) + '\t' + format_number(row.interval.b) + '\t' +
                   format_number(row.segment_const) + '\t' + format_number(row.bound) + '\t' +
                   format_number(row.measured) + '\t' + (row.pass ? "yes" : "no") + '\n';
        }
    }
    return out;
}

ReverifyResult reverify(const SplineDocument& spline, const PathDocument& path, int samples,
                        std::optional<double> tolerance_override) {
    double d = tolerance_override.value_or(spline.provenance.tolerance);
    SourcePtr fitted = path.path;
    if (spline.provenance.radius != 0.0)
        fitted = std::make_shared<PiecewisePath>(
            corner_compensation(*path.path, spline.provenance.radius, CompensationOptions{}));
    std::vector<SourcePtr> sections = split_c2_sections(fitted);

    if (fitted->dim() != spline.dim)
        throw ParseError("spline and source dimensions differ");
    if (sections.size() != spline.curves.size())
        throw ParseError("spline curve count does not match the source's sections");

    ReverifyResult result;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const CurveSource& src = *sections[i];
        const CompositeSpline& comp = spline.curves[i];
        Interval sd = src.domain();
        Interval cd = comp.domain();
        if (std::abs(sd.a - cd.a) > 1e-9 || std::abs(sd.b - cd.b) > 1e-9)
            throw ParseError("curve " + std::to_string(i) +
                             " domain does not match the source section");

        CurveFit fit{comp, verify_error(comp, src, d, std::max(16, samples)),
                     verify_c2(comp, 1e-8), {}};
        for (std::size_t s = 0; s < comp.segment_count(); ++s) {
            Interval iv = comp.partition().interval(s);
            double sum_sq = 0.0;
            for (int axis = 0; axis < src.dim(); ++axis) {
                double m = segment_constant(estimate_second_derivative(src, iv, axis));
                sum_sq += m * m;
            }
            SegmentReportRow row;
            row.index = s;
            row.interval = iv;
            row.segment_const = std::sqrt(sum_sq);
            row.bound = error_bound(row.segment_const, iv.length());
            row.measured = fit.deviation.segments[s].max_deviation;
            row.pass = row.measured <= d;
            fit.rows.push_back(row);
        }
        result.max_deviation = std::max(result.max_deviation, fit.deviation.max_deviation);
        result.worst_c2_jump = std::max(result.worst_c2_jump, fit.continuity.worst());
        if (!fit.deviation.pass || !fit.continuity.pass) result.pass = false;
        result.curves.push_back(std::move(fit));
    }
    return result;
}

} // namespace toolfit
