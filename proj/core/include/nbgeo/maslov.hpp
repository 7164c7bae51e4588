#pragma once

#include <array>

#include "nbgeo/geom_surface.hpp"
#include "nbgeo/normal_bundle.hpp"
#include "nbgeo/types.hpp"

namespace nbgeo {

/// The three scalars of the JH display,
///   P = (1+t^2a^2)^{-2} e1a + (1+t^2a^2)^{-1}(1+t^2b^2)^{-1} e1b,
///   Q = (1+t^2a^2)^{-1}(1+t^2b^2)^{-1} e2a + (1+t^2b^2)^{-2} e2b,
///   R = a(1+t^2a^2)^{-1} + b(1+t^2b^2)^{-1}.
struct PQR {
    double P, Q, R;
};
PQR pqr(const PrincipalData& pd, double t);

/// Mean curvature of T^perp M in C^3 (trace convention):
///   H = -(P t^2 a e1 + Q t^2 b e2 - R N, P t e1 + Q t e2),
/// together with the nine diagonal second-fundamental-form components
/// h[alpha-4][i-1] = h^alpha_{ii}.
struct MeanCurvature {
    Vec6 H;
    double h[3][3];
};
MeanCurvature mean_curvature_closed_full(const PrincipalData& pd, double t);
Vec6 mean_curvature_closed(const PrincipalData& pd, double t);

/// |H| from the scalar representation, sqrt(t^2P^2(1+t^2a^2) +
/// t^2Q^2(1+t^2b^2) + R^2); avoids assembling the 6-vector.
double mean_curvature_norm(const PrincipalData& pd, double t);

/// The inner products <JH, e~_i> for i = 1, 2, 3.
std::array<double, 3> jh_inner(const PrincipalData& pd, double t);

/// The simplified (post-Codazzi) inner products <JH(H), f_*(e~_i)>.
std::array<double, 3> jhh_tangent(const PrincipalData& pd, double t);

/// Derivatives of the coefficient fields P, Q, R along the surface frame.
/// These cancel from every tangential inner product; they are free inputs of
/// the expanded-form test fixture.
struct FieldDerivs {
    double e1P = 0.0, e2P = 0.0;
    double e1Q = 0.0, e2Q = 0.0;
    double e1R = 0.0, e2R = 0.0;
};

/// The full Leibniz expansion of JH(H) as a 6-vector (the long display), with
/// connection-form terms from pd and analytic t-derivatives of P, Q, R. The
/// simplified jhh_tangent is authoritative; this expansion exists so tests can
/// verify the cancellation steps sign by sign.
Vec6 jhh_expanded(const PrincipalData& pd, double t, const FieldDerivs& fd);

inline double vanishing_h_threshold(double diam) { return 1e-9 / diam; }

/// Maslovian residuals F_ij = <JH(H), f_*(e~_i)><JH, e~_j> - (i <-> j) and
/// their cancellation-relative companions
///   F^_ij = |F_ij| / (|T_i I_j| + |T_j I_i| + 1e-300 + max(1, |H|^3 diam)).
/// errors: VanishingH when |H| < eps_H (the condition is vacuous there).
struct MaslovResiduals {
    double F12, F13, F23;
    double Fhat12, Fhat13, Fhat23;
    double H_norm;

    double fhat_max() const { return std::max({Fhat12, Fhat13, Fhat23}); }
    double f_abs_max() const {
        return std::max({std::abs(F12), std::abs(F13), std::abs(F23)});
    }
};
MaslovResiduals maslov_residuals(const PrincipalData& pd, double t);

/// Everything at one bundle point, for reports and cross-checks.
struct MaslovData {
    PQR pqr;
    Vec6 H;
    std::array<double, 3> jh_comp;   // (tP, tQ, R): JH in the (e1, e2, d/dt) basis
    std::array<double, 3> jhh_tan;
    std::array<double, 3> jh_inner;
    MaslovResiduals residuals;
};
MaslovData maslov_data(const PrincipalData& pd, double t);

/// Closed-form coefficient polynomials of the cleared residual identities:
///   f1 = -2a(a+b)^2(e1a+e1b),          g1 = -2b(a+b)^2(e2a+e2b),
///   f3 = 2a(a-b)(a+b)^3 e1a,           g3 = 2b(a-b)(a+b)^3 e2a,
/// where f3/g3 are valid only under e1a+e1b = e2a+e2b = 0.
struct CurvatureSample {
    double a, b;
    double e1a, e1b, e2a, e2b;
};
struct ClosedCoeffs {
    double f1, g1;
    double f3, g3;  // NaN unless requested under the constraint
};
/// errors: ConstraintViolated if with_constrained and the constraint fails.
ClosedCoeffs identity_coeffs_closed(const CurvatureSample& s, bool with_constrained = false);

/// Numerically extracted odd-power coefficients of
///   (1+t^2a^2)^{9/2}(1+t^2b^2)^4 F13 = sum_i f_{2i-1} t^{2i-1}   (and the
/// g/F23 side), obtained by evaluating the cleared polynomial at five t
/// samples and solving the odd Vandermonde system.
/// errors: IllConditioned (condition number > 1e12, or bad sample set).
struct ExtractedCoeffs {
    std::array<double, 5> f;  // coefficients of t^1, t^3, t^5, t^7, t^9
    std::array<double, 5> g;
    double condition;
};
std::array<double, 5> default_identity_t_samples();
ExtractedCoeffs identity_coeffs_extracted(
    const CurvatureSample& s,
    const std::array<double, 5>& t_samples = default_identity_t_samples());

/// |tangential part of the derivative of the H field along JH| — the numeric
/// stand-in for the remark's A_{JH}H. Central differences of
/// mean_curvature_closed in (u,v,t), projected on span{fe1, fe2, fe3}.
/// errors: VanishingH unless allow_zero_h.
double ajh_h_residual(const SurfaceChart& chart, const PrincipalData& pd, double t,
                      bool allow_zero_h = false);

/// div_g(JH) on the bundle: G^{ij}(d_i (JH)_j - Gamma^k_ij (JH)_k) with the
/// metric and Christoffels from the oracle module and coordinate derivatives
/// of the lowered components by central differences.
double hamiltonian_residual(const SurfaceChart& chart, const PrincipalData& pd, double t);

} // namespace nbgeo
