#pragma once

#include <limits>
#include <string>
#include <vector>

#include "nbgeo/geom_surface.hpp"
#include "nbgeo/maslov.hpp"

namespace nbgeo {

enum class Verdict { kMaslovian, kNotMaslovian, kMinimalBundle, kMixed };
std::string to_string(Verdict v);

enum class ShapeKind { kSphere, kCylinder, kCone, kPlane, kOther };
std::string to_string(ShapeKind k);

struct ShapeGuess {
    ShapeKind kind = ShapeKind::kOther;
    double param = 0.0;      // rho for sphere/cylinder, r for cone, 0 otherwise
    double fit_error = 0.0;
};

struct SampleRow {
    double u = 0.0, v = 0.0, t = 0.0;
    double F12 = 0.0, F13 = 0.0, F23 = 0.0;
    double Fhat12 = 0.0, Fhat13 = 0.0, Fhat23 = 0.0;
    double fhat_max = 0.0;
    double H_norm = 0.0;
    double hs_res = std::numeric_limits<double>::quiet_NaN();
    double ajh_res = std::numeric_limits<double>::quiet_NaN();
    bool excluded = false;
    bool umbilic = false;
    bool vanishing_h = false;
};

struct Aggregates {
    std::size_t n_total = 0, n_excluded = 0, n_umbilic = 0, n_vanishing_h = 0;
    std::size_t n_converse = 0, n_converse_above = 0;
    double max_fhat = 0.0, median_fhat = 0.0;
    double max_f_abs = 0.0, median_f_abs = 0.0;
    double min_h_norm = std::numeric_limits<double>::infinity();
    double max_h_norm = 0.0;
    double max_hs_res = 0.0;
    double max_ajh_res = 0.0;
    double converse_fraction = 0.0;
};

struct SampleOptions {
    double converse_threshold = 1e-3;  // F^ level for the nonvanishing statistic
    bool compute_hs = true;
    bool compute_ajh = true;
    int threads = 0;  // 0: NBGEO_THREADS-capped hardware concurrency

    /// Fault-injection hook for negative-control runs: applied to every
    /// principal-data sample before residual evaluation. Leave empty.
    std::function<void(PrincipalData&)> debug_mutate_pd;
};

struct ResidualReport {
    int nu = 0, nv = 0;
    std::vector<double> t_set;
    double tol = 0.0;
    std::vector<SampleRow> samples;  // grid-major, then t-major: ((i*nv)+j)*nt + k
    Aggregates agg;
    Verdict verdict = Verdict::kMixed;
    ShapeGuess shape;
};

/// The default bundle fiber sample set; t = 0 participates only in
/// consistency statistics, never in the converse (nonvanishing) counts.
std::vector<double> default_t_set();

/// Grid sampling and verdicts. Evaluates the closed-form residuals on the
/// nu x nv chart grid times t_set, skipping exclusions; umbilic points are
/// evaluated with the fallback frame and flagged.
/// errors: InvalidParams (grid/t_set), AllSamplesExcluded.
ResidualReport sample_and_verify(const SurfaceChart& chart, int nu, int nv,
                                 const std::vector<double>& t_set, double tol,
                                 const SampleOptions& opts = {});

/// Decision tree over principal-curvature samples (grid-ordered, nu x nv):
/// constant equal curvatures => sphere; constants {0, c} => cylinder; a == 0
/// with b fitting 1/(r s + c) along rulings => cone; both zero => plane.
/// errors: InsufficientSamples (< 16 usable samples).
ShapeGuess recognize_shape(const std::vector<PrincipalData>& samples, int nu, int nv);

} // namespace nbgeo
