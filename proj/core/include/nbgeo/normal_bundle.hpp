#pragma once

#include "nbgeo/geom_surface.hpp"
#include "nbgeo/types.hpp"

namespace nbgeo {

/// Point of the total space T^perp M: chart coordinates plus fiber coordinate.
struct BundlePoint {
    double u = 0.0, v = 0.0;
    double t = 0.0;
};

/// Adapted orthonormal frames of the Lagrangian immersion f(x,t) = (x, tN):
/// fe_i are the pushforwards of the tangent frame, e_{3+i} = J(fe_i) span the
/// normal space.
struct BundleFrames {
    Vec6 fe1, fe2, fe3;
    Vec6 e4, e5, e6;
};

/// f(x, t) = (x, tN) in R^3 x R^3.
Vec6 immerse(const PrincipalData& pd, double t);

/// Closed-form frames:
///   fe1 = (1+t^2 a^2)^{-1/2} (e1, -t a e1),
///   fe2 = (1+t^2 b^2)^{-1/2} (e2, -t b e2),
///   fe3 = (0, N),
/// and e_{3+i} = J(fe_i). Valid at umbilic points as well (only a, b, e1,
/// e2, N enter).
BundleFrames frames(const PrincipalData& pd, double t);

/// The complex structure of C^3 = R^3 x R^3: J(X, Y) = (-Y, X).
Vec6 complex_structure(const Vec6& X);

} // namespace nbgeo
