#include "nbgeo/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nbgeo/errors.hpp"

namespace nbgeo {

namespace {

using nlohmann::json;

Rect parse_rect(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw InvalidParams(std::string(what) + " must be [[u0,u1],[v0,v1]]");
    Rect r;
    r.u0 = j[0][0].get<double>();
    r.u1 = j[0][1].get<double>();
    r.v0 = j[1][0].get<double>();
    r.v1 = j[1][1].get<double>();
    if (!(r.u0 < r.u1) || !(r.v0 < r.v1))
        throw InvalidParams(std::string(what) + " must have u0 < u1 and v0 < v1");
    return r;
}

} // namespace

SurfaceChart load_surface_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParams(std::string("surface JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("surface") || !doc["surface"].is_string())
        throw InvalidParams("surface JSON needs a \"surface\" name");
    for (const auto& [key, value] : doc.items())
        if (key != "surface" && key != "params" && key != "domain" && key != "exclusions")
            throw InvalidParams("unknown key '" + key + "' in surface JSON");

    std::map<std::string, double> params;
    if (doc.contains("params")) {
        if (!doc["params"].is_object()) throw InvalidParams("\"params\" must be an object");
        for (const auto& [key, value] : doc["params"].items()) {
            if (!value.is_number()) throw InvalidParams("parameter '" + key + "' must be a number");
            params[key] = value.get<double>();
        }
    }

    SurfaceChart chart = catalog_surface(doc["surface"].get<std::string>(), params);

    Rect domain = chart.domain();
    if (doc.contains("domain")) domain = parse_rect(doc["domain"], "domain");
    std::vector<Rect> exclusions = chart.exclusions();
    if (doc.contains("exclusions")) {
        if (!doc["exclusions"].is_array()) throw InvalidParams("\"exclusions\" must be an array");
        exclusions.clear();
        for (const auto& e : doc["exclusions"]) exclusions.push_back(parse_rect(e, "exclusion"));
    }
    return chart.with_domain(domain, std::move(exclusions));
}

SurfaceChart load_surface_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open surface file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_surface_json_text(ss.str());
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

// JSON-safe number: non-finite becomes null
std::string json_num(double x) {
    if (!std::isfinite(x)) return "null";
    return format_double(x);
}

void write_rect(std::ostream& os, const Rect& r) {
    os << "[[" << json_num(r.u0) << "," << json_num(r.u1) << "],[" << json_num(r.v0)
       << "," << json_num(r.v1) << "]]";
}

} // namespace

void write_report_json(std::ostream& os, const SurfaceChart& chart,
                       const ResidualReport& rep, const ReportMeta& meta) {
    os << "{\n";
    os << "  \"schema\": \"nbgeo/1\",\n";
    os << "  \"command\": \"" << meta.command << "\",\n";
    os << "  \"seed\": " << meta.seed << ",\n";
    os << "  \"surface\": {\n";
    os << "    \"name\": \"" << chart.name() << "\",\n";
    os << "    \"params\": {";
    bool first = true;
    for (const auto& [key, value] : chart.params()) {
        if (!first) os << ", ";
        first = false;
        os << "\"" << key << "\": " << json_num(value);
    }
    os << "},\n";
    os << "    \"domain\": ";
    write_rect(os, chart.domain());
    os << ",\n    \"exclusions\": [";
    for (std::size_t i = 0; i < chart.exclusions().size(); ++i) {
        if (i) os << ", ";
        write_rect(os, chart.exclusions()[i]);
    }
    os << "]\n  },\n";
    os << "  \"grid\": [" << rep.nu << ", " << rep.nv << "],\n";
    os << "  \"t_samples\": [";
    for (std::size_t i = 0; i < rep.t_set.size(); ++i) {
        if (i) os << ", ";
        os << json_num(rep.t_set[i]);
    }
    os << "],\n";
    os << "  \"tol\": " << json_num(rep.tol) << ",\n";
    const Aggregates& a = rep.agg;
    os << "  \"aggregates\": {\n";
    os << "    \"n_samples\": " << a.n_total << ",\n";
    os << "    \"n_excluded\": " << a.n_excluded << ",\n";
    os << "    \"n_umbilic\": " << a.n_umbilic << ",\n";
    os << "    \"n_vanishing_h\": " << a.n_vanishing_h << ",\n";
    os << "    \"n_converse\": " << a.n_converse << ",\n";
    os << "    \"n_converse_above\": " << a.n_converse_above << ",\n";
    os << "    \"max_fhat\": " << json_num(a.max_fhat) << ",\n";
    os << "    \"median_fhat\": " << json_num(a.median_fhat) << ",\n";
    os << "    \"max_abs_f\": " << json_num(a.max_f_abs) << ",\n";
    os << "    \"median_abs_f\": " << json_num(a.median_f_abs) << ",\n";
    os << "    \"min_h_norm\": " << json_num(a.min_h_norm) << ",\n";
    os << "    \"max_h_norm\": " << json_num(a.max_h_norm) << ",\n";
    os << "    \"max_hs_res\": " << json_num(a.max_hs_res) << ",\n";
    os << "    \"max_ajh_res\": " << json_num(a.max_ajh_res) << ",\n";
    os << "    \"converse_fraction\": " << json_num(a.converse_fraction) << "\n";
    os << "  },\n";
    os << "  \"verdict\": \"" << to_string(rep.verdict) << "\",\n";
    os << "  \"shape\": {\"kind\": \"" << to_string(rep.shape.kind)
       << "\", \"param\": " << json_num(rep.shape.param)
       << ", \"fit_error\": " << json_num(rep.shape.fit_error) << "}\n";
    os << "}\n";
}

void write_samples_csv(std::ostream& os, const ResidualReport& rep) {
    os << "u,v,t,F12,F13,F23,Fhat_max,H_norm,HS_res,AJH_res,flags\n";
    for (const SampleRow& r : rep.samples) {
        os << format_double(r.u) << ',' << format_double(r.v) << ',' << format_double(r.t)
           << ',' << format_double(r.F12) << ',' << format_double(r.F13) << ','
           << format_double(r.F23) << ',' << format_double(r.fhat_max) << ','
           << format_double(r.H_norm) << ',' << format_double(r.hs_res) << ','
           << format_double(r.ajh_res) << ',';
        std::string flags;
        auto add = [&flags](const char* f) {
            if (!flags.empty()) flags += '|';
            flags += f;
        };
        if (r.excluded) add("excluded");
        if (r.umbilic) add("umbilic");
        if (r.vanishing_h) add("vanishing_h");
        if (flags.empty()) flags = "ok";
        os << flags << '\n';
    }
}

} // namespace nbgeo
