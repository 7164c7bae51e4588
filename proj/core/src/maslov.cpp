#include "nbgeo/maslov.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "nbgeo/errors.hpp"
#include "nbgeo/oracle.hpp"

namespace nbgeo {

namespace {

/// Shared per-point factors. Everything is a function of t^2, so evaluating
/// at -t reproduces the same bits; the odd/even t-parity of the downstream
/// displays is then exact in floating point.
struct Factors {
    double t2, t3;
    double ia, ib;  // (1+t^2a^2)^{-1}, (1+t^2b^2)^{-1}
    double sa, sb;  // their square roots
    double P, Q, R;
};

Factors factors(const PrincipalData& pd, double t) {
    Factors f;
    f.t2 = t * t;
    f.t3 = f.t2 * t;
    f.ia = 1.0 / (1.0 + f.t2 * pd.a * pd.a);
    f.ib = 1.0 / (1.0 + f.t2 * pd.b * pd.b);
    f.sa = std::sqrt(f.ia);
    f.sb = std::sqrt(f.ib);
    f.P = f.ia * f.ia * pd.e1a + f.ia * f.ib * pd.e1b;
    f.Q = f.ia * f.ib * pd.e2a + f.ib * f.ib * pd.e2b;
    f.R = pd.a * f.ia + pd.b * f.ib;
    return f;
}

double h_norm_from(const Factors& f) {
    return std::sqrt(f.t2 * f.P * f.P / f.ia + f.t2 * f.Q * f.Q / f.ib + f.R * f.R);
}

std::array<double, 3> jh_inner_from(const PrincipalData& pd, double t, const Factors& f) {
    return {t * (f.ia * f.sa * pd.e1a + f.sa * f.ib * pd.e1b),
            t * (f.ia * f.sb * pd.e2a + f.ib * f.sb * pd.e2b),
            f.R};
}

std::array<double, 3> jhh_tangent_from(const PrincipalData& pd, double t, const Factors& f) {
    const double T1 = f.sa * (-f.t3 * f.P * f.P * pd.e1a - 2.0 * f.t3 * f.P * f.Q * pd.e2a -
                              f.t3 * f.Q * f.Q * pd.e1b - 2.0 * t * f.P * f.R * pd.a);
    const double T2 = f.sb * (-f.t3 * f.P * f.P * pd.e2a - 2.0 * f.t3 * f.P * f.Q * pd.e1b -
                              f.t3 * f.Q * f.Q * pd.e2b - 2.0 * t * f.R * f.Q * pd.b);
    const double T3 = -f.t2 * f.P * f.P * pd.a - f.t2 * f.Q * f.Q * pd.b;
    return {T1, T2, T3};
}

MaslovResiduals residuals_from(const PrincipalData& pd, double t, const Factors& f) {
    const auto T = jhh_tangent_from(pd, t, f);
    const auto I = jh_inner_from(pd, t, f);

    MaslovResiduals r;
    r.F12 = T[0] * I[1] - T[1] * I[0];
    r.F13 = T[0] * I[2] - T[2] * I[0];
    r.F23 = T[1] * I[2] - T[2] * I[1];
    r.H_norm = h_norm_from(f);

    const double eps_h = vanishing_h_threshold(pd.diam);
    if (r.H_norm < eps_h) {
        std::ostringstream os;
        os << "|H| = " << r.H_norm << " below eps_H = " << eps_h
           << "; the Maslovian condition is vacuous here";
        throw VanishingH(os.str());
    }

    const double scale = std::max(1.0, r.H_norm * r.H_norm * r.H_norm * pd.diam);
    auto fhat = [scale](double F, double x, double y) {
        return std::abs(F) / (std::abs(x) + std::abs(y) + 1e-300 + scale);
    };
    r.Fhat12 = fhat(r.F12, T[0] * I[1], T[1] * I[0]);
    r.Fhat13 = fhat(r.F13, T[0] * I[2], T[2] * I[0]);
    r.Fhat23 = fhat(r.F23, T[1] * I[2], T[2] * I[1]);
    return r;
}

} // namespace

PQR pqr(const PrincipalData& pd, double t) {
    const Factors f = factors(pd, t);
    return {f.P, f.Q, f.R};
}

MeanCurvature mean_curvature_closed_full(const PrincipalData& pd, double t) {
    const Factors f = factors(pd, t);

    MeanCurvature mc;
    mc.h[0][0] = -t * f.ia * f.sa * pd.e1a;
    mc.h[0][1] = -t * f.sa * f.ib * pd.e1b;
    mc.h[0][2] = 0.0;
    mc.h[1][0] = -t * f.ia * f.sb * pd.e2a;
    mc.h[1][1] = -t * f.ib * f.sb * pd.e2b;
    mc.h[1][2] = 0.0;
    mc.h[2][0] = -pd.a * f.ia;
    mc.h[2][1] = -pd.b * f.ib;
    mc.h[2][2] = 0.0;

    const Vec3 first = -(f.P * f.t2 * pd.a * pd.e1 + f.Q * f.t2 * pd.b * pd.e2 - f.R * pd.N);
    const Vec3 second = -(f.P * t * pd.e1 + f.Q * t * pd.e2);
    mc.H = make_vec6(first, second);
    return mc;
}

Vec6 mean_curvature_closed(const PrincipalData& pd, double t) {
    return mean_curvature_closed_full(pd, t).H;
}

double mean_curvature_norm(const PrincipalData& pd, double t) {
    return h_norm_from(factors(pd, t));
}

std::array<double, 3> jh_inner(const PrincipalData& pd, double t) {
    return jh_inner_from(pd, t, factors(pd, t));
}

std::array<double, 3> jhh_tangent(const PrincipalData& pd, double t) {
    return jhh_tangent_from(pd, t, factors(pd, t));
}

Vec6 jhh_expanded(const PrincipalData& pd, double t, const FieldDerivs& fd) {
    const Factors f = factors(pd, t);
    const double t2 = f.t2;
    const double P = f.P, Q = f.Q, R = f.R;
    const double a = pd.a, b = pd.b;
    const double o1 = pd.omega12_e1, o2 = pd.omega12_e2;  // omega_2^1 = -omega_1^2

    const double dia = -2.0 * t * a * a * f.ia * f.ia;
    const double dib = -2.0 * t * b * b * f.ib * f.ib;
    const double dtP = 2.0 * f.ia * dia * pd.e1a + (dia * f.ib + f.ia * dib) * pd.e1b;
    const double dtQ = (dia * f.ib + f.ia * dib) * pd.e2a + 2.0 * f.ib * dib * pd.e2b;
    const double dtR = a * dia + b * dib;

    const double tP = t * P, tQ = t * Q;

    const double c1 = tP * (-fd.e1P * t2 * a - P * t2 * pd.e1a + Q * t2 * b * o1 - a * R) +
                      tQ * (-fd.e2P * t2 * a - P * t2 * pd.e2a + Q * t2 * b * o2) +
                      R * (-dtP * t2 * a - 2.0 * t * P * a);
    const double c2 = tP * (-P * t2 * a * o1 - fd.e1Q * t2 * b - Q * t2 * pd.e1b) +
                      tQ * (-P * t2 * a * o2 - fd.e2Q * t2 * b - Q * t2 * pd.e2b - b * R) +
                      R * (-dtQ * t2 * b - 2.0 * t * Q * b);
    const double cN = tP * (-P * t2 * a * a + fd.e1R) + tQ * (-Q * t2 * b * b + fd.e2R) +
                      R * dtR;

    const double d1 = tP * (-fd.e1P * t + Q * t * o1) + tQ * (-fd.e2P * t + Q * t * o2) +
                      R * (-dtP * t - P);
    const double d2 = tP * (-P * t * o1 - fd.e1Q * t) + tQ * (-P * t * o2 - fd.e2Q * t) +
                      R * (-dtQ * t - Q);
    const double dN = tP * (-P * t * a) + tQ * (-Q * t * b);

    return make_vec6(c1 * pd.e1 + c2 * pd.e2 + cN * pd.N,
                     d1 * pd.e1 + d2 * pd.e2 + dN * pd.N);
}

MaslovResiduals maslov_residuals(const PrincipalData& pd, double t) {
    return residuals_from(pd, t, factors(pd, t));
}

MaslovData maslov_data(const PrincipalData& pd, double t) {
    const Factors f = factors(pd, t);
    MaslovData d;
    d.pqr = {f.P, f.Q, f.R};
    d.H = mean_curvature_closed_full(pd, t).H;
    d.jh_comp = {t * f.P, t * f.Q, f.R};
    d.jhh_tan = jhh_tangent_from(pd, t, f);
    d.jh_inner = jh_inner_from(pd, t, f);
    d.residuals = residuals_from(pd, t, f);
    return d;
}

ClosedCoeffs identity_coeffs_closed(const CurvatureSample& s, bool with_constrained) {
    const double apb = s.a + s.b;
    ClosedCoeffs c;
    c.f1 = -2.0 * s.a * apb * apb * (s.e1a + s.e1b);
    c.g1 = -2.0 * s.b * apb * apb * (s.e2a + s.e2b);
    c.f3 = std::numeric_limits<double>::quiet_NaN();
    c.g3 = c.f3;
    if (with_constrained) {
        const double scale =
            1.0 + std::max({std::abs(s.e1a), std::abs(s.e1b), std::abs(s.e2a), std::abs(s.e2b)});
        if (std::abs(s.e1a + s.e1b) > 1e-9 * scale || std::abs(s.e2a + s.e2b) > 1e-9 * scale)
            throw ConstraintViolated(
                "f3/g3 require e1a+e1b = e2a+e2b = 0; inputs violate the constraint");
        const double amb = s.a - s.b;
        const double apb3 = apb * apb * apb;
        c.f3 = 2.0 * s.a * amb * apb3 * s.e1a;
        c.g3 = 2.0 * s.b * amb * apb3 * s.e2a;
    }
    return c;
}

std::array<double, 5> default_identity_t_samples() {
    return {0.25, 0.5, 0.75, 1.0, 1.25};
}

ExtractedCoeffs identity_coeffs_extracted(const CurvatureSample& s,
                                          const std::array<double, 5>& t_samples) {
    for (int i = 0; i < 5; ++i) {
        if (!(t_samples[i] > 0.0))
            throw IllConditioned("t samples must be positive");
        for (int j = 0; j < i; ++j)
            if (t_samples[i] == t_samples[j])
                throw IllConditioned("t samples must be distinct");
    }

    Eigen::Matrix<double, 5, 5> V;
    Eigen::Matrix<double, 5, 1> Gf, Gg;
    for (int k = 0; k < 5; ++k) {
        const double t = t_samples[k];
        const double t2 = t * t, t3 = t2 * t;
        double p = t;
        for (int i = 0; i < 5; ++i) {
            V(k, i) = p;  // t^{2i+1}
            p *= t2;
        }

        const double A = t2 * s.a * s.a, B = t2 * s.b * s.b;
        const double ia = 1.0 / (1.0 + A), ib = 1.0 / (1.0 + B);
        const double P = ia * ia * s.e1a + ia * ib * s.e1b;
        const double Q = ia * ib * s.e2a + ib * ib * s.e2b;
        const double R = s.a * ia + s.b * ib;

        const double phi1 = -2.0 * P * Q * R * s.e2a +
                            ia * Q * Q * (s.b * s.e1a - s.a * s.e1b) +
                            ib * P * P * (s.a * s.e1b - s.b * s.e1a);
        const double phi2 = -2.0 * s.a * P * R * R;
        const double psi1 = -2.0 * P * Q * R * s.e1b +
                            ia * Q * Q * (s.b * s.e2a - s.a * s.e2b) +
                            ib * P * P * (s.a * s.e2b - s.b * s.e2a);
        const double psi2 = -2.0 * s.b * Q * R * R;

        const double clear = std::pow((1.0 + A) * (1.0 + B), 4);
        Gf(k) = clear * (phi1 * t3 + phi2 * t);
        Gg(k) = clear * (psi1 * t3 + psi2 * t);
    }

    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 5>> svd(V, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(4);
    if (!(cond < 1e12)) {
        std::ostringstream os;
        os << "odd Vandermonde condition number " << cond << " exceeds 1e12";
        throw IllConditioned(os.str());
    }

    ExtractedCoeffs out;
    const Eigen::Matrix<double, 5, 1> cf = svd.solve(Gf);
    const Eigen::Matrix<double, 5, 1> cg = svd.solve(Gg);
    for (int i = 0; i < 5; ++i) {
        out.f[i] = cf(i);
        out.g[i] = cg(i);
    }
    out.condition = cond;
    return out;
}

double ajh_h_residual(const SurfaceChart& chart, const PrincipalData& pd, double t,
                      bool allow_zero_h) {
    const Factors f = factors(pd, t);
    const double h_norm = h_norm_from(f);
    const double eps_h = vanishing_h_threshold(pd.diam);
    if (h_norm < eps_h && !allow_zero_h)
        throw VanishingH("|H| below eps_H; pass allow_zero_h to evaluate anyway");

    // JH in chart coordinates (u, v, t)
    const Vec3 c(t * f.P * pd.w1(0) + t * f.Q * pd.w2(0),
                 t * f.P * pd.w1(1) + t * f.Q * pd.w2(1), f.R);
    const double cn = c.norm();
    if (cn == 0.0) return 0.0;  // JH vanishes identically (H = 0 mode)

    const double h = 1e-4 * std::max(1.0, std::abs(t)) / cn;
    auto h_field = [&](double du, double dv, double dt) {
        const PrincipalData p =
            principal_frame(chart, pd.u + du, pd.v + dv, UmbilicPolicy::kFallback);
        return mean_curvature_closed(p, t + dt);
    };
    const Vec6 dH =
        (h_field(h * c(0), h * c(1), h * c(2)) - h_field(-h * c(0), -h * c(1), -h * c(2))) /
        (2.0 * h);

    const BundleFrames fr = frames(pd, t);
    const double p1 = dH.dot(fr.fe1), p2 = dH.dot(fr.fe2), p3 = dH.dot(fr.fe3);
    return std::sqrt(p1 * p1 + p2 * p2 + p3 * p3);
}

double hamiltonian_residual(const SurfaceChart& chart, const PrincipalData& pd, double t) {
    const JetEvaluator je(chart);
    const BundlePoint q{pd.u, pd.v, t};
    const auto jets = je.eval(q);
    const BundleMetric M = bundle_metric(jets);

    // lowered components of JH at an arbitrary bundle point
    auto lowered = [&](const BundlePoint& p) -> Vec3 {
        const PrincipalData pp = principal_frame(chart, p.u, p.v, UmbilicPolicy::kFallback);
        const Vec6 JH = complex_structure(mean_curvature_closed(pp, p.t));
        const auto j = je.eval(p);
        return Vec3(JH.dot(j.d[0]), JH.dot(j.d[1]), JH.dot(j.d[2]));
    };

    const Vec3 X0 = lowered(q);
    Mat3 dX;  // dX(i, j) = d_i X_j
    const double qc[3] = {q.u, q.v, q.t};
    for (int i = 0; i < 3; ++i) {
        const double h = 1e-4 * std::max(1.0, std::abs(qc[i]));
        BundlePoint qp = q, qm = q;
        (i == 0 ? qp.u : i == 1 ? qp.v : qp.t) += h;
        (i == 0 ? qm.u : i == 1 ? qm.v : qm.t) -= h;
        dX.row(i) = ((lowered(qp) - lowered(qm)) / (2.0 * h)).transpose();
    }

    double div = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double cov = dX(i, j);
            for (int k = 0; k < 3; ++k) cov -= M.gamma[k](i, j) * X0(k);
            div += M.Ginv(i, j) * cov;
        }
    return std::abs(div);
}

} // namespace nbgeo
