#include "nbgeo/oracle.hpp"

#include <cmath>
#include <sstream>

#include "nbgeo/errors.hpp"

namespace nbgeo {

namespace {

template <int N>
Vec3 jet_partial(const JetVec3<N>& a, int j, int k) {
    return Vec3(a[0].partial(j, k), a[1].partial(j, k), a[2].partial(j, k));
}

void check_bundle_metric(const Mat3& G) {
    const double scale = G.trace() / 3.0;
    if (G.determinant() < 1e-12 * scale * scale * scale)
        throw DegenerateMetric("degenerate induced bundle metric");
}

} // namespace

JetEvaluator::Jets JetEvaluator::eval(const BundlePoint& q) const {
    const JetVec3<3> X = chart_->position_jet(q.u, q.v);
    const JetVec3<2> Xu = derive_u(X);
    const JetVec3<2> Xv = derive_v(X);
    const JetVec3<2> Nj = normalized(cross(Xu, Xv));

    const Vec3 x = jet_partial(X, 0, 0);
    const Vec3 xu = jet_partial(X, 1, 0), xv = jet_partial(X, 0, 1);
    const Vec3 xuu = jet_partial(X, 2, 0), xuv = jet_partial(X, 1, 1), xvv = jet_partial(X, 0, 2);
    const Vec3 N = jet_partial(Nj, 0, 0);
    const Vec3 Nu = jet_partial(Nj, 1, 0), Nv = jet_partial(Nj, 0, 1);
    const Vec3 Nuu = jet_partial(Nj, 2, 0), Nuv = jet_partial(Nj, 1, 1), Nvv = jet_partial(Nj, 0, 2);

    const double t = q.t;
    Jets J;
    J.f = make_vec6(x, t * N);
    J.d[0] = make_vec6(xu, t * Nu);
    J.d[1] = make_vec6(xv, t * Nv);
    J.d[2] = make_vec6(Vec3::Zero(), N);
    J.dd[0][0] = make_vec6(xuu, t * Nuu);
    J.dd[0][1] = make_vec6(xuv, t * Nuv);
    J.dd[1][1] = make_vec6(xvv, t * Nvv);
    J.dd[0][2] = make_vec6(Vec3::Zero(), Nu);
    J.dd[1][2] = make_vec6(Vec3::Zero(), Nv);
    J.dd[2][2] = Vec6::Zero();
    J.dd[1][0] = J.dd[0][1];
    J.dd[2][0] = J.dd[0][2];
    J.dd[2][1] = J.dd[1][2];
    return J;
}

Mat3 induced_metric(const JetEvaluator& je, const BundlePoint& q) {
    const auto J = je.eval(q);
    Mat3 G;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G(i, j) = J.d[i].dot(J.d[j]);
    check_bundle_metric(G);
    return G;
}

BundleMetric bundle_metric(const JetEvaluator::Jets& jets) {
    BundleMetric M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M.G(i, j) = jets.d[i].dot(jets.d[j]);
    check_bundle_metric(M.G);
    M.Ginv = M.G.inverse();

    // dG[s](i,j) = d_s G_ij
    Mat3 dG[3];
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                dG[s](i, j) = jets.dd[s][i].dot(jets.d[j]) + jets.d[i].dot(jets.dd[s][j]);

    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 3; ++l)
                    sum += M.Ginv(k, l) * (dG[i](j, l) + dG[j](i, l) - dG[l](i, j));
                M.gamma[k](i, j) = 0.5 * sum;
            }
    return M;
}

namespace {

Vec6 mean_curvature_from_jets(const JetEvaluator::Jets& jets, const BundleMetric& M) {
    Vec6 H = Vec6::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec6 cov = jets.dd[i][j];
            for (int k = 0; k < 3; ++k) cov -= M.gamma[k](i, j) * jets.d[k];
            H += M.Ginv(i, j) * cov;
        }
    return H;
}

} // namespace

Vec6 mean_curvature_oracle(const JetEvaluator& je, const BundlePoint& q) {
    const auto jets = je.eval(q);
    const BundleMetric M = bundle_metric(jets);
    return mean_curvature_from_jets(jets, M);
}

Vec6 tangential_project(const JetEvaluator& je, const BundlePoint& q, const Vec6& V) {
    const auto jets = je.eval(q);
    Mat3 G;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G(i, j) = jets.d[i].dot(jets.d[j]);
    check_bundle_metric(G);
    const Vec3 rhs(V.dot(jets.d[0]), V.dot(jets.d[1]), V.dot(jets.d[2]));
    const Vec3 c = G.inverse() * rhs;
    return c(0) * jets.d[0] + c(1) * jets.d[1] + c(2) * jets.d[2];
}

OracleFrame oracle_tangent_frame(const JetEvaluator& je, const BundlePoint& q) {
    const auto jets = je.eval(q);

    // surface-level data straight from the chart jets
    const JetVec3<3> X = je.chart().position_jet(q.u, q.v);
    const Vec3 xu = jet_partial(X, 1, 0), xv = jet_partial(X, 0, 1);
    const Vec3 xuu = jet_partial(X, 2, 0), xuv = jet_partial(X, 1, 1), xvv = jet_partial(X, 0, 2);
    const Vec3 N = xu.cross(xv).normalized();

    Mat2 g, hn;
    g << xu.dot(xu), xu.dot(xv), xu.dot(xv), xv.dot(xv);
    hn << xuu.dot(N), xuv.dot(N), xuv.dot(N), xvv.dot(N);

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat2> es(hn, g);
    OracleFrame fr;
    fr.a = es.eigenvalues()(0);
    fr.b = es.eigenvalues()(1);

    Vec2 w1 = es.eigenvectors().col(0);
    Vec3 e1 = (w1(0) * xu + w1(1) * xv).normalized();
    const double sgn = orientation_sign(e1);
    e1 *= sgn;
    w1 *= sgn;
    const Vec3 e2 = N.cross(e1).normalized();
    const Vec2 w2 = g.inverse() * Vec2(e2.dot(xu), e2.dot(xv));

    fr.v1 = (w1(0) * jets.d[0] + w1(1) * jets.d[1]).normalized();
    fr.v2 = (w2(0) * jets.d[0] + w2(1) * jets.d[1]).normalized();
    fr.v3 = jets.d[2];  // (0, N), already unit
    return fr;
}

Vec6 h_field_derivative_fd(const JetEvaluator& je, const BundlePoint& q,
                           const Vec3& dir, double h) {
    const BundlePoint qp{q.u + h * dir(0), q.v + h * dir(1), q.t + h * dir(2)};
    const BundlePoint qm{q.u - h * dir(0), q.v - h * dir(1), q.t - h * dir(2)};
    return (mean_curvature_oracle(je, qp) - mean_curvature_oracle(je, qm)) / (2.0 * h);
}

OracleResiduals maslov_residual_oracle(const JetEvaluator& je, const BundlePoint& q,
                                       double fd_step) {
    const auto jets = je.eval(q);
    const BundleMetric M = bundle_metric(jets);
    const Vec6 H = mean_curvature_from_jets(jets, M);

    const double h_norm = H.norm();
    const double eps_h = 1e-9 / je.chart().diameter();
    if (h_norm < eps_h) {
        std::ostringstream os;
        os << "oracle |H| = " << h_norm << " below eps_H at (" << q.u << ", " << q.v
           << ", " << q.t << ")";
        throw VanishingH(os.str());
    }

    const Vec6 JH = complex_structure(H);
    const Vec3 rhs(JH.dot(jets.d[0]), JH.dot(jets.d[1]), JH.dot(jets.d[2]));
    const Vec3 c = M.Ginv * rhs;  // coordinate components of JH

    const double h = fd_step * std::max(1.0, std::abs(q.t)) / c.norm();
    const Vec6 dH = h_field_derivative_fd(je, q, c, h);
    const Vec6 T6 = tangential_project(je, q, dH);

    const OracleFrame fr = oracle_tangent_frame(je, q);
    OracleResiduals r;
    r.jhh_tan = {T6.dot(fr.v1), T6.dot(fr.v2), T6.dot(fr.v3)};
    r.jh_inner = {JH.dot(fr.v1), JH.dot(fr.v2), JH.dot(fr.v3)};
    r.F12 = r.jhh_tan[0] * r.jh_inner[1] - r.jhh_tan[1] * r.jh_inner[0];
    r.F13 = r.jhh_tan[0] * r.jh_inner[2] - r.jhh_tan[2] * r.jh_inner[0];
    r.F23 = r.jhh_tan[1] * r.jh_inner[2] - r.jhh_tan[2] * r.jh_inner[1];
    r.H_norm = h_norm;
    return r;
}

} // namespace nbgeo
