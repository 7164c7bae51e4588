#include "nbgeo/normal_bundle.hpp"

#include <cmath>

namespace nbgeo {

Vec6 immerse(const PrincipalData& pd, double t) {
    return make_vec6(pd.x, t * pd.N);
}

BundleFrames frames(const PrincipalData& pd, double t) {
    const double sa = 1.0 / std::sqrt(1.0 + t * t * pd.a * pd.a);
    const double sb = 1.0 / std::sqrt(1.0 + t * t * pd.b * pd.b);

    BundleFrames fr;
    fr.fe1 = make_vec6(sa * pd.e1, (-t * pd.a * sa) * pd.e1);
    fr.fe2 = make_vec6(sb * pd.e2, (-t * pd.b * sb) * pd.e2);
    fr.fe3 = make_vec6(Vec3::Zero(), pd.N);
    fr.e4 = complex_structure(fr.fe1);
    fr.e5 = complex_structure(fr.fe2);
    fr.e6 = complex_structure(fr.fe3);
    return fr;
}

Vec6 complex_structure(const Vec6& X) {
    Vec6 out;
    out.head<3>() = -X.tail<3>();
    out.tail<3>() = X.head<3>();
    return out;
}

} // namespace nbgeo
