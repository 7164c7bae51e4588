#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace nbgeo {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Axis-aligned rectangle in chart coordinates, [u0,u1] x [v0,v1].
struct Rect {
    double u0 = 0.0, u1 = 0.0;
    double v0 = 0.0, v1 = 0.0;

    bool contains(double u, double v) const {
        return u >= u0 && u <= u1 && v >= v0 && v <= v1;
    }
    bool contains_open(double u, double v) const {
        return u > u0 && u < u1 && v > v0 && v < v1;
    }
};

inline Vec6 make_vec6(const Vec3& first, const Vec3& second) {
    Vec6 out;
    out << first, second;
    return out;
}

/// Deterministic sign convention for principal directions. Both the
/// closed-form path and the brute-force oracle orient e1 the same way so
/// that frame-dependent quantities can be compared component-wise.
/// Returns +1 or -1; flips e1 so that its projection on a fixed reference
/// direction is positive (cascading to further references when nearly
/// orthogonal to the first).
inline double orientation_sign(const Vec3& e1) {
    static const Vec3 refs[3] = {
        Vec3(0.8175170953613698, 0.5052824821082156, 0.2763203096356543),
        Vec3(-0.3122248863866569, 0.8174155604004373, 0.4843441052473215),
        Vec3(0.5049242907910110, -0.3120881886750657, 0.8046845191130558),
    };
    for (const Vec3& d : refs) {
        const double s = e1.dot(d);
        if (std::abs(s) > 1e-6) return s > 0.0 ? 1.0 : -1.0;
    }
    return 1.0;
}

} // namespace nbgeo
