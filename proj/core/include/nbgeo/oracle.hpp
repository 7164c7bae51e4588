#pragma once

#include <array>

#include "nbgeo/geom_surface.hpp"
#include "nbgeo/normal_bundle.hpp"
#include "nbgeo/types.hpp"

namespace nbgeo {

/// Brute-force differential geometry of the immersion f(u,v,t) = (x, tN) of
/// T^perp M into R^6, built directly from chart jets. Shares nothing with the
/// closed-form curvature path except the chart itself (and the frame
/// orientation convention), so it serves as an independent oracle.
class JetEvaluator {
public:
    explicit JetEvaluator(const SurfaceChart& chart) : chart_(&chart) {}

    /// Analytic order-2 jets of the immersion at q = (u, v, t).
    struct Jets {
        Vec6 f;
        std::array<Vec6, 3> d;                  // first partials wrt u, v, t
        std::array<std::array<Vec6, 3>, 3> dd;  // second partials (symmetric)
    };
    Jets eval(const BundlePoint& q) const;

    const SurfaceChart& chart() const { return *chart_; }

private:
    const SurfaceChart* chart_;
};

/// Induced metric G_ij = <d_i f, d_j f>. errors: DegenerateMetric.
Mat3 induced_metric(const JetEvaluator& je, const BundlePoint& q);

/// Metric, inverse and Christoffel symbols (gamma[k](i,j) = Gamma^k_ij),
/// all from exact order-2 jets.
struct BundleMetric {
    Mat3 G;
    Mat3 Ginv;
    std::array<Mat3, 3> gamma;
};
BundleMetric bundle_metric(const JetEvaluator::Jets& jets);

/// Mean curvature vector in the trace convention: the ambient-coordinate
/// Laplace-Beltrami of the immersion,
///   H = G^{ij} (d_i d_j f - Gamma^k_ij d_k f).
Vec6 mean_curvature_oracle(const JetEvaluator& je, const BundlePoint& q);

/// Orthogonal projection of V onto span{d_u f, d_v f, d_t f}.
Vec6 tangential_project(const JetEvaluator& je, const BundlePoint& q, const Vec6& V);

/// The adapted orthonormal tangent frame of the bundle built by the oracle's
/// own route: principal directions from Eigen's generalized eigensolver,
/// pushed forward through the analytic Jacobian and normalized (no use of the
/// closed frame formulas).
struct OracleFrame {
    Vec6 v1, v2, v3;
    double a, b;
};
OracleFrame oracle_tangent_frame(const JetEvaluator& je, const BundlePoint& q);

/// Central-difference directional derivative of the oracle H field along the
/// coordinate direction `dir` with parameter step h.
Vec6 h_field_derivative_fd(const JetEvaluator& je, const BundlePoint& q,
                           const Vec3& dir, double h);

/// Maslovian residuals computed entirely along the oracle path: H by
/// Laplace-Beltrami, the derivative of the H field along JH by central
/// differences, tangential projection, and F_ij per definition.
/// errors: VanishingH, DegenerateMetric.
struct OracleResiduals {
    double F12, F13, F23;
    std::array<double, 3> jhh_tan;   // <JH(H), v_i>
    std::array<double, 3> jh_inner;  // <JH, v_i>
    double H_norm;
};
OracleResiduals maslov_residual_oracle(const JetEvaluator& je, const BundlePoint& q,
                                       double fd_step = 1e-4);

} // namespace nbgeo
