#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbgeo/classify.hpp"
#include "nbgeo/errors.hpp"
#include "nbgeo/geom_surface.hpp"
#include "nbgeo/json_io.hpp"
#include "nbgeo/maslov.hpp"
#include "nbgeo/oracle.hpp"
#include "nbgeo/parallel.hpp"
#include "nbgeo/rng.hpp"
#include "nbgeo/verify.hpp"

namespace {

using namespace nbgeo;

constexpr int kExitPass = 0;
constexpr int kExitCriterionFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> params;
    for (const std::string& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw InvalidParams("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        try {
            std::size_t used = 0;
            const double value = std::stod(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
            params[key] = value;
        } catch (const std::exception&) {
            throw InvalidParams("--param value for '" + key + "' is not a number");
        }
    }
    return params;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidParams("bad number '" + item + "' in list");
        }
    }
    return out;
}

std::pair<int, int> parse_grid(const std::string& spec) {
    const auto x = spec.find_first_of("xX");
    if (x == std::string::npos) throw InvalidParams("--grid expects NUxNV");
    try {
        return {std::stoi(spec.substr(0, x)), std::stoi(spec.substr(x + 1))};
    } catch (const std::exception&) {
        throw InvalidParams("--grid expects NUxNV");
    }
}

SurfaceChart resolve_surface(const std::string& surface,
                             const std::vector<std::string>& param_kvs) {
    const bool is_file = surface.size() > 5 && surface.substr(surface.size() - 5) == ".json";
    if (is_file || std::filesystem::exists(surface)) {
        if (!param_kvs.empty())
            throw InvalidParams("--param cannot be combined with a surface file");
        return load_surface_json_file(surface);
    }
    return catalog_surface(surface, parse_params(param_kvs));
}

struct AnalyzeArgs {
    std::string surface = "sphere";
    std::vector<std::string> params;
    std::string grid = "32x32";
    std::string t_samples;
    double tol = 1e-8;
    std::uint64_t seed = 42;
    std::string output = "report";
    std::string format = "both";
};

int cmd_analyze(const AnalyzeArgs& args) {
    const SurfaceChart chart = resolve_surface(args.surface, args.params);
    const auto [nu, nv] = parse_grid(args.grid);
    std::vector<double> t_set =
        args.t_samples.empty() ? default_t_set() : parse_list(args.t_samples);

    SampleOptions opts;
    const ResidualReport rep = sample_and_verify(chart, nu, nv, t_set, args.tol, opts);

    const ReportMeta meta{"analyze", args.seed};
    if (args.format == "json" || args.format == "both") {
        std::ofstream os(args.output + ".json", std::ios::binary);
        if (!os) throw InvalidParams("cannot write '" + args.output + ".json'");
        write_report_json(os, chart, rep, meta);
    }
    if (args.format == "csv" || args.format == "both") {
        std::ofstream os(args.output + ".csv", std::ios::binary);
        if (!os) throw InvalidParams("cannot write '" + args.output + ".csv'");
        write_samples_csv(os, rep);
    }

    std::cout << chart.name() << ": verdict " << to_string(rep.verdict) << ", max F^ = "
              << format_double(rep.agg.max_fhat) << ", shape " << to_string(rep.shape.kind)
              << (rep.shape.kind == ShapeKind::kSphere || rep.shape.kind == ShapeKind::kCylinder
                      ? " (rho = " + format_double(rep.shape.param) + ")"
                  : rep.shape.kind == ShapeKind::kCone
                      ? " (r = " + format_double(rep.shape.param) + ")"
                      : "")
              << "\n";
    return kExitPass;
}

int cmd_verify_theorem(const VerifyOptions& opts) {
    const std::vector<CriterionResult> results = run_acceptance(opts);
    if (results.empty()) {
        std::cerr << "no criterion matches --only '" << opts.only << "'\n";
        return kExitConfigError;
    }
    for (const CriterionResult& r : results)
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  -- " << r.detail
                  << "\n";
    const bool ok = all_passed(results);
    std::cout << (ok ? "all criteria passed" : "CRITERIA FAILED") << "\n";
    return ok ? kExitPass : kExitCriterionFailure;
}

int cmd_identities(int trials, std::uint64_t seed, const std::string& t_samples) {
    std::array<double, 5> ts = default_identity_t_samples();
    if (!t_samples.empty()) {
        const std::vector<double> given = parse_list(t_samples);
        if (given.size() != 5)
            throw InvalidParams("--t-samples needs exactly 5 values for extraction");
        std::copy(given.begin(), given.end(), ts.begin());
    }

    double worst1 = 0.0, worst3 = 0.0;
    Rng rng(seed);
    for (int k = 0; k < trials; ++k) {
        const CurvatureSample s{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                                rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const ExtractedCoeffs ext = identity_coeffs_extracted(s, ts);
        const ClosedCoeffs cls = identity_coeffs_closed(s);
        worst1 = std::max(
            {worst1, std::abs(ext.f[0] - cls.f1) / (1.0 + std::abs(cls.f1)),
             std::abs(ext.g[0] - cls.g1) / (1.0 + std::abs(cls.g1))});
    }
    Rng rng3(seed + 1);
    for (int k = 0; k < trials; ++k) {
        CurvatureSample s;
        s.a = rng3.uniform(-2, 2);
        s.b = rng3.uniform(-2, 2);
        s.e1a = rng3.uniform(-2, 2);
        s.e2a = rng3.uniform(-2, 2);
        s.e1b = -s.e1a;
        s.e2b = -s.e2a;
        const ExtractedCoeffs ext = identity_coeffs_extracted(s, ts);
        const ClosedCoeffs cls = identity_coeffs_closed(s, true);
        worst3 = std::max(
            {worst3, std::abs(ext.f[1] - cls.f3) / (1.0 + std::abs(cls.f3)),
             std::abs(ext.g[1] - cls.g3) / (1.0 + std::abs(cls.g3))});
    }

    std::cout << "f1/g1: max relative error " << format_double(worst1) << " over " << trials
              << " trials\n";
    std::cout << "f3/g3: max relative error " << format_double(worst3) << " over " << trials
              << " constrained trials\n";
    const bool ok = worst1 <= 1e-7 && worst3 <= 1e-7;
    std::cout << (ok ? "identities hold to 1e-07" : "IDENTITY CHECK FAILED") << "\n";
    return ok ? kExitPass : kExitCriterionFailure;
}

int cmd_oracle_compare(int samples, std::uint64_t seed, const std::string& only_surface) {
    bool ok = true;
    std::printf("%-10s  %12s  %12s  %8s\n", "surface", "max dH", "max dF", "F pts");
    std::uint64_t salt = 0;
    for (const std::string& name : catalog_names()) {
        ++salt;
        if (!only_surface.empty() && name != only_surface) continue;
        const SurfaceChart chart = catalog_surface(name);
        const JetEvaluator je(chart);
        Rng rng(seed + salt * 1000003ULL);
        const Rect& dom = chart.domain();
        double max_h = 0.0, max_f = 0.0;
        int f_pts = 0;
        for (int k = 0; k < samples; ++k) {
            const double u = rng.uniform(dom.u0, dom.u1);
            const double v = rng.uniform(dom.v0, dom.v1);
            const double t = rng.uniform(-2.0, 2.0);
            if (!chart.contains(u, v)) continue;
            const PrincipalData pd = principal_frame(chart, u, v, UmbilicPolicy::kFallback);
            const Vec6 Ho = mean_curvature_oracle(je, {u, v, t});
            max_h = std::max(max_h, (mean_curvature_closed(pd, t) - Ho).norm() /
                                        (1.0 + Ho.norm()));
            if (pd.umbilic && !chart.isoparametric()) continue;
            try {
                const OracleResiduals orc = maslov_residual_oracle(je, {u, v, t});
                const MaslovResiduals cls = maslov_residuals(pd, t);
                max_f = std::max({max_f, std::abs(cls.F12 - orc.F12),
                                  std::abs(cls.F13 - orc.F13), std::abs(cls.F23 - orc.F23)});
                ++f_pts;
            } catch (const VanishingH&) {
            }
        }
        std::printf("%-10s  %12.3e  %12.3e  %8d\n", name.c_str(), max_h, max_f, f_pts);
        if (max_h > 1e-6 || max_f > 1e-5) ok = false;
    }
    std::cout << (ok ? "oracle and closed forms agree" : "ORACLE MISMATCH") << "\n";
    return ok ? kExitPass : kExitCriterionFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of the normal-bundle curvature machinery"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    CLI::App* analyze = app.add_subcommand("analyze", "grid residual analysis of one surface");
    analyze->add_option("--surface", an.surface, "catalog name or surface .json file");
    analyze->add_option("--param", an.params, "surface parameter key=value (repeatable)");
    analyze->add_option("--grid", an.grid, "grid dimensions NUxNV (default 32x32)");
    analyze->add_option("--t-samples", an.t_samples, "comma-separated fiber samples");
    analyze->add_option("--tol", an.tol, "Maslovian F^ tolerance (default 1e-8)");
    analyze->add_option("--seed", an.seed, "report seed field (default 42)");
    analyze->add_option("--output", an.output, "output path base (default 'report')");
    analyze->add_option("--format", an.format, "json|csv|both (default both)")
        ->check(CLI::IsMember({"json", "csv", "both"}));

    VerifyOptions vo;
    CLI::App* verify = app.add_subcommand("verify-theorem", "run the full verification matrix");
    verify->add_option("--only", vo.only, "run only criteria whose name contains this");
    verify->add_flag("--inject-sign-error", vo.inject_sign_error,
                     "negative control: flip the sign of e1b everywhere");
    verify->add_option("--seed", vo.seed, "seed (default 42)");
    verify->add_option("--threads", vo.threads, "worker threads (0 = auto)");

    int id_trials = 1000;
    std::uint64_t id_seed = 42;
    std::string id_tsamples;
    CLI::App* ident = app.add_subcommand("identities", "coefficient identity checks");
    ident->add_option("--trials", id_trials, "random trials per identity (default 1000)");
    ident->add_option("--seed", id_seed, "seed (default 42)");
    ident->add_option("--t-samples", id_tsamples, "5 comma-separated extraction samples");

    int oc_samples = 200;
    std::uint64_t oc_seed = 42;
    std::string oc_surface;
    CLI::App* oc = app.add_subcommand("oracle-compare", "closed form vs brute-force oracle");
    oc->add_option("--samples", oc_samples, "random bundle points per surface (default 200)");
    oc->add_option("--seed", oc_seed, "seed (default 42)");
    oc->add_option("--surface", oc_surface, "restrict to one catalog surface");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitPass : kExitConfigError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(an);
        if (verify->parsed()) return cmd_verify_theorem(vo);
        if (ident->parsed()) return cmd_identities(id_trials, id_seed, id_tsamples);
        if (oc->parsed()) return cmd_oracle_compare(oc_samples, oc_seed, oc_surface);
    } catch (const UnknownSurface& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    return kExitConfigError;
}
