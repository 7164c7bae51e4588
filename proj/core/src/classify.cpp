#include "nbgeo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "nbgeo/errors.hpp"
#include "nbgeo/parallel.hpp"

namespace nbgeo {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::kMaslovian: return "Maslovian";
        case Verdict::kNotMaslovian: return "NotMaslovian";
        case Verdict::kMinimalBundle: return "MinimalBundle";
        case Verdict::kMixed: return "Mixed";
    }
    return "?";
}

std::string to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::kSphere: return "Sphere";
        case ShapeKind::kCylinder: return "Cylinder";
        case ShapeKind::kCone: return "Cone";
        case ShapeKind::kPlane: return "Plane";
        case ShapeKind::kOther: return "Other";
    }
    return "?";
}

std::vector<double> default_t_set() {
    return {-2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0};
}

namespace {

double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

} // namespace

ResidualReport sample_and_verify(const SurfaceChart& chart, int nu, int nv,
                                 const std::vector<double>& t_set, double tol,
                                 const SampleOptions& opts) {
    if (nu < 2 || nv < 2) throw InvalidParams("grid dimensions must be >= 2");
    if (t_set.empty()) throw InvalidParams("t_set must be nonempty");
    if (!(tol > 0.0)) throw InvalidParams("tol must be positive");

    const Rect& dom = chart.domain();
    const int nt = static_cast<int>(t_set.size());

    // chart-level pass: principal data once per grid point, reused for all t
    std::vector<std::optional<PrincipalData>> pds(static_cast<std::size_t>(nu) * nv);
    parallel_for(pds.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / nv;
        const int j = static_cast<int>(idx) % nv;
        const double u = dom.u0 + (dom.u1 - dom.u0) * i / (nu - 1);
        const double v = dom.v0 + (dom.v1 - dom.v0) * j / (nv - 1);
        if (chart.contains(u, v)) {
            PrincipalData pd = principal_frame(chart, u, v, UmbilicPolicy::kFallback);
            if (opts.debug_mutate_pd) opts.debug_mutate_pd(pd);
            pds[idx] = pd;
        }
    }, opts.threads);

    if (std::none_of(pds.begin(), pds.end(), [](const auto& p) { return p.has_value(); }))
        throw AllSamplesExcluded("every grid point fell in an exclusion region");

    ResidualReport rep;
    rep.nu = nu;
    rep.nv = nv;
    rep.t_set = t_set;
    rep.tol = tol;
    rep.samples.resize(pds.size() * nt);

    parallel_for(rep.samples.size(), [&](std::size_t ridx) {
        const std::size_t pidx = ridx / nt;
        const int k = static_cast<int>(ridx % nt);
        const int i = static_cast<int>(pidx) / nv;
        const int j = static_cast<int>(pidx) % nv;
        SampleRow& row = rep.samples[ridx];
        row.u = dom.u0 + (dom.u1 - dom.u0) * i / (nu - 1);
        row.v = dom.v0 + (dom.v1 - dom.v0) * j / (nv - 1);
        row.t = t_set[k];

        const auto& pd = pds[pidx];
        if (!pd) {
            row.excluded = true;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.F12 = row.F13 = row.F23 = nan;
            row.Fhat12 = row.Fhat13 = row.Fhat23 = row.fhat_max = nan;
            row.H_norm = nan;
            return;
        }
        row.umbilic = pd->umbilic;
        try {
            const MaslovResiduals mr = maslov_residuals(*pd, row.t);
            row.F12 = mr.F12;
            row.F13 = mr.F13;
            row.F23 = mr.F23;
            row.Fhat12 = mr.Fhat12;
            row.Fhat13 = mr.Fhat13;
            row.Fhat23 = mr.Fhat23;
            row.fhat_max = mr.fhat_max();
            row.H_norm = mr.H_norm;
        } catch (const VanishingH&) {
            row.vanishing_h = true;
            row.H_norm = mean_curvature_norm(*pd, row.t);
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.F12 = row.F13 = row.F23 = nan;
            row.Fhat12 = row.Fhat13 = row.Fhat23 = row.fhat_max = nan;
        }
        if (opts.compute_hs) row.hs_res = hamiltonian_residual(chart, *pd, row.t);
        if (opts.compute_ajh)
            row.ajh_res = ajh_h_residual(chart, *pd, row.t, /*allow_zero_h=*/true);
    }, opts.threads);

    // single-threaded reduction
    Aggregates& a = rep.agg;
    a.n_total = rep.samples.size();
    std::vector<double> fhat_vals, fabs_vals;
    for (const SampleRow& row : rep.samples) {
        if (row.excluded) {
            ++a.n_excluded;
            continue;
        }
        if (row.umbilic) ++a.n_umbilic;
        if (row.vanishing_h) ++a.n_vanishing_h;
        a.min_h_norm = std::min(a.min_h_norm, row.H_norm);
        a.max_h_norm = std::max(a.max_h_norm, row.H_norm);
        // umbilic rows carry fallback-frame values; they are exact only on
        // isoparametric surfaces, so only those enter the residual maxima
        const bool usable = !row.umbilic || chart.isoparametric();
        if (usable && std::isfinite(row.hs_res))
            a.max_hs_res = std::max(a.max_hs_res, row.hs_res);
        if (usable && std::isfinite(row.ajh_res))
            a.max_ajh_res = std::max(a.max_ajh_res, row.ajh_res);
        if (row.vanishing_h || row.t == 0.0) continue;
        a.max_fhat = std::max(a.max_fhat, row.fhat_max);
        fhat_vals.push_back(row.fhat_max);
        const double fabs_max =
            std::max({std::abs(row.F12), std::abs(row.F13), std::abs(row.F23)});
        a.max_f_abs = std::max(a.max_f_abs, fabs_max);
        fabs_vals.push_back(fabs_max);
        if (!row.umbilic) {
            ++a.n_converse;
            if (row.fhat_max > opts.converse_threshold) ++a.n_converse_above;
        }
    }
    a.median_fhat = median_of(std::move(fhat_vals));
    a.median_f_abs = median_of(std::move(fabs_vals));
    a.converse_fraction =
        a.n_converse == 0 ? 0.0 : static_cast<double>(a.n_converse_above) / a.n_converse;

    const double eps_h = vanishing_h_threshold(chart.diameter());
    if (a.max_h_norm <= 10.0 * eps_h)
        rep.verdict = Verdict::kMinimalBundle;
    else if (a.min_h_norm > eps_h && a.max_fhat <= tol)
        rep.verdict = Verdict::kMaslovian;
    else if (a.converse_fraction >= 0.95)
        rep.verdict = Verdict::kNotMaslovian;
    else
        rep.verdict = Verdict::kMixed;

    // recognize_shape wants the full grid; mark excluded slots via NaN u
    std::vector<PrincipalData> grid(pds.size());
    for (std::size_t idx = 0; idx < pds.size(); ++idx)
        if (pds[idx])
            grid[idx] = *pds[idx];
        else
            grid[idx].u = std::numeric_limits<double>::quiet_NaN();
    try {
        rep.shape = recognize_shape(grid, nu, nv);
    } catch (const InsufficientSamples&) {
        rep.shape = ShapeGuess{ShapeKind::kOther, 0.0,
                               std::numeric_limits<double>::quiet_NaN()};
    }
    return rep;
}

namespace {

bool sample_valid(const PrincipalData& pd) { return std::isfinite(pd.u); }

struct LineFit {
    double slope = 0.0;
    double rel_err = std::numeric_limits<double>::infinity();
    bool ok = false;
};

/// Least-squares line y = m s + c through (s_i, y_i); rel_err is the max
/// residual relative to the data scale.
LineFit fit_line(const std::vector<double>& s, const std::vector<double>& y) {
    LineFit f;
    const std::size_t n = s.size();
    if (n < 3) return f;
    double Ss = 0, Sy = 0, Sss = 0, Ssy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Ss += s[i];
        Sy += y[i];
        Sss += s[i] * s[i];
        Ssy += s[i] * y[i];
    }
    const double det = n * Sss - Ss * Ss;
    if (det == 0.0) return f;
    f.slope = (n * Ssy - Ss * Sy) / det;
    const double icept = (Sy - f.slope * Ss) / n;
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(y[i]));
        err = std::max(err, std::abs(y[i] - (f.slope * s[i] + icept)));
    }
    f.rel_err = err / std::max(scale, 1e-300);
    f.ok = true;
    return f;
}

struct AxisFit {
    double slope = 0.0;       // median line slope
    double err = std::numeric_limits<double>::infinity();
    bool ok = false;
};

/// Fit 1/b against accumulated chord length along every grid line of one axis.
AxisFit fit_axis(const std::vector<PrincipalData>& grid, int nu, int nv, int axis,
                 bool use_b) {
    const int lines = axis == 0 ? nv : nu;
    const int steps = axis == 0 ? nu : nv;
    std::vector<double> slopes;
    double max_err = 0.0;
    for (int l = 0; l < lines; ++l) {
        std::vector<double> s, y;
        Vec3 prev = Vec3::Zero();
        double arc = 0.0;
        for (int m = 0; m < steps; ++m) {
            const int i = axis == 0 ? m : l;
            const int j = axis == 0 ? l : m;
            const PrincipalData& pd = grid[static_cast<std::size_t>(i) * nv + j];
            if (!sample_valid(pd)) continue;
            const double curv = use_b ? pd.b : pd.a;
            if (curv == 0.0) continue;
            if (!s.empty()) arc += (pd.x - prev).norm();
            prev = pd.x;
            s.push_back(arc);
            y.push_back(1.0 / curv);
        }
        const LineFit f = fit_line(s, y);
        if (!f.ok) continue;
        slopes.push_back(f.slope);
        max_err = std::max(max_err, f.rel_err);
    }
    AxisFit out;
    if (slopes.empty()) return out;
    out.slope = median_of(slopes);
    double spread = 0.0;
    for (double m : slopes) spread = std::max(spread, std::abs(m - out.slope));
    out.err = std::max(max_err, spread / std::max(std::abs(out.slope), 1e-300));
    out.ok = true;
    return out;
}

} // namespace

ShapeGuess recognize_shape(const std::vector<PrincipalData>& samples, int nu, int nv) {
    std::vector<const PrincipalData*> valid;
    valid.reserve(samples.size());
    for (const PrincipalData& pd : samples)
        if (sample_valid(pd)) valid.push_back(&pd);
    if (valid.size() < 16)
        throw InsufficientSamples("recognize_shape needs >= 16 non-excluded samples");

    double kappa = 0.0, max_abs_a = 0.0, max_abs_b = 0.0;
    double min_a = valid[0]->a, max_a = valid[0]->a;
    double min_b = valid[0]->b, max_b = valid[0]->b;
    std::vector<double> as, bs;
    const double diam = valid[0]->diam;
    for (const PrincipalData* pd : valid) {
        kappa = std::max({kappa, std::abs(pd->a), std::abs(pd->b)});
        max_abs_a = std::max(max_abs_a, std::abs(pd->a));
        max_abs_b = std::max(max_abs_b, std::abs(pd->b));
        min_a = std::min(min_a, pd->a);
        max_a = std::max(max_a, pd->a);
        min_b = std::min(min_b, pd->b);
        max_b = std::max(max_b, pd->b);
        as.push_back(pd->a);
        bs.push_back(pd->b);
    }

    ShapeGuess guess;
    if (kappa <= 1e-8 / diam) {
        guess.kind = ShapeKind::kPlane;
        guess.param = 0.0;
        guess.fit_error = kappa * diam;
        return guess;
    }

    const double const_tol = 1e-6 * kappa;
    const bool const_a = (max_a - min_a) <= const_tol;
    const bool const_b = (max_b - min_b) <= const_tol;
    const double med_a = median_of(as);
    const double med_b = median_of(bs);

    if (const_a && const_b) {
        const double spread = std::max(max_a - min_a, max_b - min_b) / kappa;
        if (std::abs(med_a - med_b) <= const_tol) {
            guess.kind = ShapeKind::kSphere;
            guess.param = -1.0 / med_a;
            guess.fit_error = spread;
        } else if (std::abs(med_a) <= const_tol) {
            guess.kind = ShapeKind::kCylinder;
            guess.param = 1.0 / std::abs(med_b);
            guess.fit_error = spread;
        } else if (std::abs(med_b) <= const_tol) {
            guess.kind = ShapeKind::kCylinder;
            guess.param = 1.0 / std::abs(med_a);
            guess.fit_error = spread;
        } else {
            guess.kind = ShapeKind::kOther;
        }
        return guess;
    }

    // flat ruled case: one curvature identically zero, the other varying
    const bool a_zero = max_abs_a <= 1e-6 * kappa;
    const bool b_zero = max_abs_b <= 1e-6 * kappa;
    if (a_zero || b_zero) {
        const bool use_b = a_zero;
        const AxisFit f0 = fit_axis(samples, nu, nv, 0, use_b);
        const AxisFit f1 = fit_axis(samples, nu, nv, 1, use_b);
        const AxisFit* best = nullptr;
        if (f0.ok && f0.err <= 1e-6 && f1.ok && f1.err <= 1e-6)
            best = std::abs(f0.slope) >= std::abs(f1.slope) ? &f0 : &f1;
        else if (f0.ok && f0.err <= 1e-6)
            best = &f0;
        else if (f1.ok && f1.err <= 1e-6)
            best = &f1;
        if (best && std::abs(best->slope) > 1e-9) {
            guess.kind = ShapeKind::kCone;
            guess.param = std::abs(best->slope);
            guess.fit_error = best->err;
            return guess;
        }
    }

    guess.kind = ShapeKind::kOther;
    return guess;
}

} // namespace nbgeo
