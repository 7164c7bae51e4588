#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nbgeo/jet.hpp"
#include "nbgeo/types.hpp"

namespace nbgeo {

/// A parametric surface patch in R^3 with exact order-3 derivative jets.
/// Evaluation is pure and immutable after construction; charts are safe to
/// share across threads.
class SurfaceChart {
public:
    using Evaluator = std::function<JetVec3<3>(double, double)>;

    SurfaceChart(std::string name, std::map<std::string, double> params,
                 Rect domain, std::vector<Rect> exclusions, Evaluator eval,
                 bool isoparametric = false);

    /// Position map with all partial derivatives up to total order 3.
    JetVec3<3> position_jet(double u, double v) const { return eval_(u, v); }

    Vec3 position(double u, double v) const;

    const Rect& domain() const { return domain_; }
    const std::vector<Rect>& exclusions() const { return exclusions_; }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

    /// True on isoparametric catalog surfaces (plane, sphere, cylinder),
    /// where the umbilic fallback yields exact derivative data.
    bool isoparametric() const { return isoparametric_; }

    /// Ambient diameter of the patch (bounding-box diagonal of a coarse
    /// position sample); the length scale for umbilic/vanishing-H thresholds.
    double diameter() const { return diameter_; }

    /// Inside the domain rectangle and outside every exclusion rectangle.
    bool contains(double u, double v) const;

    /// Chart with u and v swapped; reverses the orientation of N. Used by the
    /// sign-coherence tests.
    SurfaceChart swapped_uv() const;

    /// Same surface restricted to a different domain / exclusion set.
    SurfaceChart with_domain(Rect domain, std::vector<Rect> exclusions) const;

private:
    std::string name_;
    std::map<std::string, double> params_;
    Rect domain_;
    std::vector<Rect> exclusions_;
    Evaluator eval_;
    bool isoparametric_ = false;
    double diameter_ = 1.0;
};

/// First and second fundamental forms in the chart basis, plus the unit
/// normal N = (x_u x x_v)/|x_u x x_v|.
struct FundamentalForms {
    Mat2 g;   // g_ij = <d_i x, d_j x>
    Mat2 hN;  // (hN)_ij = <d_i d_j x, N>
    Vec3 N;
};

/// Pointwise principal-curvature package: everything the curvature formulas
/// of the normal-bundle machinery consume.
struct PrincipalData {
    double u = 0.0, v = 0.0;
    Vec3 x = Vec3::Zero();
    Vec3 N = Vec3::Zero();
    double a = 0.0, b = 0.0;        // principal curvatures, a <= b
    Vec3 e1 = Vec3::Zero();         // unit principal directions, {e1,e2,N} right-handed
    Vec3 e2 = Vec3::Zero();
    Vec2 w1 = Vec2::Zero();         // chart components of e1, e2
    Vec2 w2 = Vec2::Zero();
    double omega12_e1 = 0.0;        // <nabla_{e1} e1, e2>
    double omega12_e2 = 0.0;        // <nabla_{e2} e1, e2>
    double e1a = 0.0, e1b = 0.0;    // directional derivatives of a, b
    double e2a = 0.0, e2b = 0.0;
    bool umbilic = false;           // |a-b| below eps_umb; frame fields are a fallback
    double diam = 1.0;              // originating chart diameter (scale for tolerances)
};

enum class UmbilicPolicy {
    kThrow,     // raise UmbilicPoint when |a-b| < eps_umb
    kFallback,  // return an arbitrary orthonormal frame, umbilic flag set
};

/// errors: DegenerateMetric when det g collapses.
FundamentalForms fundamental_forms(const SurfaceChart& chart, double u, double v);

/// Eigen-decomposition of the shape operator A = g^{-1} hN together with the
/// frame and eigenvalue derivatives obtained from order-3 jets by first-order
/// perturbation theory. omega_1^2 comes from differentiating the eigenvector
/// field, never from the Codazzi equations, so codazzi_residual stays an
/// independent consistency check.
/// errors: DegenerateMetric; UmbilicPoint under UmbilicPolicy::kThrow.
PrincipalData principal_frame(const SurfaceChart& chart, double u, double v,
                              UmbilicPolicy policy = UmbilicPolicy::kThrow);

/// Residuals of the two scalar Codazzi equations in the principal frame,
///   r1 = e1b - (a-b) omega_1^2(e2),
///   r2 = e2a - (b-a) omega_2^1(e1)   with omega_2^1 = -omega_1^2.
/// Both vanish for every surface; nonzero values measure implementation error.
std::pair<double, double> codazzi_residual(const PrincipalData& pd);

/// Test-surface catalog. Names: sphere, cylinder, cone, plane, ellipsoid,
/// torus, catenoid, graph. The cone uses the parametrization
///   x(u,v) = u/sqrt(r^2+1) * (r cos(sqrt(r^2+1) v / r), r sin(...), 1).
/// errors: UnknownSurface, InvalidParams.
SurfaceChart catalog_surface(const std::string& name,
                             const std::map<std::string, double>& params = {});

std::vector<std::string> catalog_names();

/// Umbilic threshold at a point with curvatures a, b on a chart of diameter d.
inline double umbilic_threshold(double a, double b, double diam) {
    return 1e-7 * std::max({std::abs(a), std::abs(b), 1.0 / diam});
}

} // namespace nbgeo
