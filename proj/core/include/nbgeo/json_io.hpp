#pragma once

#include <iosfwd>
#include <string>

#include "nbgeo/classify.hpp"
#include "nbgeo/geom_surface.hpp"

namespace nbgeo {

/// Surface description document:
///   {"surface": "<name>", "params": {...},
///    "domain": [[u0,u1],[v0,v1]], "exclusions": [[[..],[..]], ...]}
/// "params", "domain" and "exclusions" are optional; omitted fields keep the
/// catalog defaults. errors: InvalidParams, UnknownSurface.
SurfaceChart load_surface_json_text(const std::string& text);
SurfaceChart load_surface_json_file(const std::string& path);

/// Formats a double with 17 significant digits (locale-independent); NaN and
/// infinities become "nan"/"inf"/"-inf".
std::string format_double(double x);

struct ReportMeta {
    std::string command;
    std::uint64_t seed = 42;
};

/// Deterministic report serialization: fixed key order, 17-significant-digit
/// floats, no whitespace variation. Identical configs produce byte-identical
/// output. Non-finite values are serialized as null.
void write_report_json(std::ostream& os, const SurfaceChart& chart,
                       const ResidualReport& rep, const ReportMeta& meta);

/// Per-sample CSV: u, v, t, F12, F13, F23, Fhat_max, H_norm, HS_res, AJH_res,
/// flags (pipe-joined: excluded|umbilic|vanishing_h, or "ok").
void write_samples_csv(std::ostream& os, const ResidualReport& rep);

} // namespace nbgeo
