#include "nbgeo/geom_surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nbgeo/errors.hpp"

namespace nbgeo {

namespace {

Vec3 jet_value(const JetVec3<3>& a) { return Vec3(a[0].value(), a[1].value(), a[2].value()); }

template <int N>
Vec3 jet_value_n(const JetVec3<N>& a) {
    return Vec3(a[0].value(), a[1].value(), a[2].value());
}

double chart_diameter(const SurfaceChart::Evaluator& eval, const Rect& d) {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    constexpr int kSteps = 8;
    for (int i = 0; i <= kSteps; ++i)
        for (int j = 0; j <= kSteps; ++j) {
            const double u = d.u0 + (d.u1 - d.u0) * i / kSteps;
            const double v = d.v0 + (d.v1 - d.v0) * j / kSteps;
            const Vec3 x = jet_value(eval(u, v));
            lo = lo.cwiseMin(x);
            hi = hi.cwiseMax(x);
        }
    return std::max((hi - lo).norm(), 1e-12);
}

void check_metric(const Mat2& g, double u, double v) {
    const double scale = 0.5 * (g(0, 0) + g(1, 1));
    if (g.determinant() < 1e-12 * scale * scale) {
        std::ostringstream os;
        os << "degenerate first fundamental form at (" << u << ", " << v << ")";
        throw DegenerateMetric(os.str());
    }
}

struct FormJets {
    Vec3 x;
    Vec3 xu, xv;
    Vec3 xdd[2][2];          // second partials, xdd[s][k]
    Vec3 N;
    Mat2 g, dgu, dgv;        // metric and its chart partials
    Mat2 hn, dhnu, dhnv;     // scalar second fundamental form and partials
};

/// All pointwise data principal_frame needs, assembled with jet arithmetic so
/// every product/quotient rule is exact.
FormJets form_jets(const SurfaceChart& chart, double u, double v) {
    const JetVec3<3> X = chart.position_jet(u, v);
    const JetVec3<2> Xu = derive_u(X);
    const JetVec3<2> Xv = derive_v(X);
    const JetVec3<2> Nj = normalized(cross(Xu, Xv));

    const Jet2 guu = dot(Xu, Xu), guv = dot(Xu, Xv), gvv = dot(Xv, Xv);

    const JetVec3<1> Xuu = derive_u(Xu);
    const JetVec3<1> Xuv = derive_v(Xu);
    const JetVec3<1> Xvv = derive_v(Xv);
    const JetVec3<1> N1 = {Nj[0].truncate<1>(), Nj[1].truncate<1>(), Nj[2].truncate<1>()};

    const Jet1 huu = dot(Xuu, N1), huv = dot(Xuv, N1), hvv = dot(Xvv, N1);

    FormJets f;
    f.x = jet_value(X);
    f.xu = jet_value_n(Xu);
    f.xv = jet_value_n(Xv);
    f.xdd[0][0] = jet_value_n(Xuu);
    f.xdd[0][1] = f.xdd[1][0] = jet_value_n(Xuv);
    f.xdd[1][1] = jet_value_n(Xvv);
    f.N = jet_value_n(Nj);

    f.g << guu.value(), guv.value(), guv.value(), gvv.value();
    f.dgu << guu.partial(1, 0), guv.partial(1, 0), guv.partial(1, 0), gvv.partial(1, 0);
    f.dgv << guu.partial(0, 1), guv.partial(0, 1), guv.partial(0, 1), gvv.partial(0, 1);
    f.hn << huu.value(), huv.value(), huv.value(), hvv.value();
    f.dhnu << huu.partial(1, 0), huv.partial(1, 0), huv.partial(1, 0), hvv.partial(1, 0);
    f.dhnv << huu.partial(0, 1), huv.partial(0, 1), huv.partial(0, 1), hvv.partial(0, 1);
    return f;
}

/// Eigen-decomposition of the shape operator g^{-1} hN via Cholesky reduction
/// to an ordinary symmetric 2x2 problem, solved in closed form. Returns
/// eigenvalues sorted a <= b and the chart components of a unit (in g)
/// eigenvector for a.
struct Eig2 {
    double a, b;
    Vec2 w1;
};

Eig2 shape_eigen(const Mat2& g, const Mat2& hn) {
    const double l11 = std::sqrt(g(0, 0));
    const double l21 = g(0, 1) / l11;
    const double l22 = std::sqrt(g(1, 1) - l21 * l21);

    Mat2 linv;
    linv << 1.0 / l11, 0.0, -l21 / (l11 * l22), 1.0 / l22;
    const Mat2 S = linv * hn * linv.transpose();

    const double s11 = S(0, 0), s22 = S(1, 1), s12 = 0.5 * (S(0, 1) + S(1, 0));
    const double tr = s11 + s22;
    const double disc = std::sqrt((s11 - s22) * (s11 - s22) + 4.0 * s12 * s12);

    Eig2 e;
    e.a = 0.5 * (tr - disc);
    e.b = 0.5 * (tr + disc);

    // eigenvector for the smaller eigenvalue, stable row choice
    Vec2 y;
    if (std::abs(s11 - e.a) > std::abs(s22 - e.a))
        y = Vec2(s12, e.a - s11);
    else
        y = Vec2(e.a - s22, s12);
    const double n = y.norm();
    if (n == 0.0)
        y = Vec2(1.0, 0.0);  // umbilic: any direction is an eigenvector
    else
        y /= n;

    e.w1 = linv.transpose() * y;
    return e;
}

} // namespace

SurfaceChart::SurfaceChart(std::string name, std::map<std::string, double> params,
                           Rect domain, std::vector<Rect> exclusions, Evaluator eval,
                           bool isoparametric)
    : name_(std::move(name)),
      params_(std::move(params)),
      domain_(domain),
      exclusions_(std::move(exclusions)),
      eval_(std::move(eval)),
      isoparametric_(isoparametric) {
    diameter_ = chart_diameter(eval_, domain_);
}

Vec3 SurfaceChart::position(double u, double v) const { return jet_value(eval_(u, v)); }

bool SurfaceChart::contains(double u, double v) const {
    if (!domain_.contains(u, v)) return false;
    for (const Rect& r : exclusions_)
        if (r.contains_open(u, v)) return false;
    return true;
}

SurfaceChart SurfaceChart::swapped_uv() const {
    Rect dom{domain_.v0, domain_.v1, domain_.u0, domain_.u1};
    std::vector<Rect> excl;
    excl.reserve(exclusions_.size());
    for (const Rect& r : exclusions_) excl.push_back({r.v0, r.v1, r.u0, r.u1});
    Evaluator base = eval_;
    Evaluator swapped = [base](double u, double v) {
        JetVec3<3> j = base(v, u);
        return JetVec3<3>{j[0].swap_uv(), j[1].swap_uv(), j[2].swap_uv()};
    };
    return SurfaceChart(name_ + "_swapped", params_, dom, std::move(excl),
                        std::move(swapped), isoparametric_);
}

SurfaceChart SurfaceChart::with_domain(Rect domain, std::vector<Rect> exclusions) const {
    return SurfaceChart(name_, params_, domain, std::move(exclusions), eval_, isoparametric_);
}

FundamentalForms fundamental_forms(const SurfaceChart& chart, double u, double v) {
    const FormJets f = form_jets(chart, u, v);
    check_metric(f.g, u, v);
    return FundamentalForms{f.g, f.hn, f.N};
}

PrincipalData principal_frame(const SurfaceChart& chart, double u, double v,
                              UmbilicPolicy policy) {
    const FormJets f = form_jets(chart, u, v);
    check_metric(f.g, u, v);

    PrincipalData pd;
    pd.u = u;
    pd.v = v;
    pd.x = f.x;
    pd.N = f.N;
    pd.diam = chart.diameter();

    const Eig2 eig = shape_eigen(f.g, f.hn);
    pd.a = eig.a;
    pd.b = eig.b;

    const double eps_umb = umbilic_threshold(pd.a, pd.b, pd.diam);
    pd.umbilic = std::abs(pd.a - pd.b) < eps_umb;
    if (pd.umbilic && policy == UmbilicPolicy::kThrow) {
        std::ostringstream os;
        os << "umbilic point at (" << u << ", " << v << "): |a-b| = "
           << std::abs(pd.a - pd.b) << " < " << eps_umb;
        throw UmbilicPoint(os.str());
    }

    Vec2 w1 = eig.w1;
    if (pd.umbilic) w1 = Vec2(1.0 / std::sqrt(f.g(0, 0)), 0.0);

    Vec3 e1 = w1(0) * f.xu + w1(1) * f.xv;
    e1.normalize();
    const double sgn = orientation_sign(e1);
    e1 *= sgn;
    w1 *= sgn;

    Vec3 e2 = f.N.cross(e1);
    e2.normalize();
    const Vec2 w2 = f.g.inverse() * Vec2(e2.dot(f.xu), e2.dot(f.xv));

    pd.e1 = e1;
    pd.e2 = e2;
    pd.w1 = w1;
    pd.w2 = w2;

    // eigenvalue perturbation: d_s lambda = w^T (d_s hN - lambda d_s g) w
    const Mat2 Ma[2] = {f.dhnu - pd.a * f.dgu, f.dhnv - pd.a * f.dgv};
    const Mat2 Mb[2] = {f.dhnu - pd.b * f.dgu, f.dhnv - pd.b * f.dgv};
    const Vec2 da(w1.dot(Ma[0] * w1), w1.dot(Ma[1] * w1));
    const Vec2 db(w2.dot(Mb[0] * w2), w2.dot(Mb[1] * w2));
    pd.e1a = w1.dot(da);
    pd.e2a = w2.dot(da);
    pd.e1b = w1.dot(db);
    pd.e2b = w2.dot(db);

    if (!pd.umbilic) {
        // eigenvector perturbation (the (a-b) division) plus the ambient
        // second-derivative contribution of the chart basis
        double omega[2];
        for (int s = 0; s < 2; ++s) {
            const double beta = w2.dot(Ma[s] * w1) / (pd.a - pd.b);
            double gamma = 0.0;
            for (int k = 0; k < 2; ++k) gamma += w1(k) * f.xdd[s][k].dot(e2);
            omega[s] = beta + gamma;
        }
        pd.omega12_e1 = w1(0) * omega[0] + w1(1) * omega[1];
        pd.omega12_e2 = w2(0) * omega[0] + w2(1) * omega[1];
    } else {
        pd.omega12_e1 = 0.0;
        pd.omega12_e2 = 0.0;
    }
    return pd;
}

std::pair<double, double> codazzi_residual(const PrincipalData& pd) {
    const double r1 = pd.e1b - (pd.a - pd.b) * pd.omega12_e2;
    const double r2 = pd.e2a + (pd.b - pd.a) * pd.omega12_e1;
    return {r1, r2};
}

namespace {

double take_param(std::map<std::string, double> params, const std::string& key,
                  double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known,
                    const std::string& surface) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const char* name : known)
            if (k == name) ok = true;
        if (!ok)
            throw InvalidParams("unknown parameter '" + k + "' for surface '" + surface + "'");
    }
}

void require_positive(double x, const std::string& what) {
    if (!(x > 0.0)) throw InvalidParams(what + " must be positive");
}

} // namespace

SurfaceChart catalog_surface(const std::string& name,
                             const std::map<std::string, double>& params) {
    using J = Jet3;
    if (name == "sphere") {
        reject_unknown(params, {"radius"}, name);
        const double rho = take_param(params, "radius", 1.0);
        require_positive(rho, "radius");
        auto eval = [rho](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            return {rho * (sin(ju) * cos(jv)), rho * (sin(ju) * sin(jv)), rho * cos(ju)};
        };
        return SurfaceChart(name, {{"radius", rho}}, Rect{0.4, M_PI - 0.4, 0.0, 6.0}, {},
                            eval, /*isoparametric=*/true);
    }
    if (name == "cylinder") {
        reject_unknown(params, {"radius"}, name);
        const double rho = take_param(params, "radius", 1.0);
        require_positive(rho, "radius");
        auto eval = [rho](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            return {rho * cos(ju), rho * sin(ju), jv};
        };
        return SurfaceChart(name, {{"radius", rho}}, Rect{0.0, 6.0, -1.0, 1.0}, {}, eval,
                            /*isoparametric=*/true);
    }
    if (name == "cone") {
        reject_unknown(params, {"r"}, name);
        const double r = take_param(params, "r", 1.0);
        require_positive(r, "r");
        const double s = std::sqrt(r * r + 1.0);
        const double k = s / r;
        auto eval = [r, s, k](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            const J scaled = (1.0 / s) * ju;
            return {scaled * (r * cos(k * jv)), scaled * (r * sin(k * jv)), scaled};
        };
        // one ruling span, just under a full turn of the circular direction
        const double v_max = 0.9 * 2.0 * M_PI * r / s;
        return SurfaceChart(name, {{"r", r}}, Rect{0.5, 2.5, 0.0, v_max}, {}, eval);
    }
    if (name == "plane") {
        reject_unknown(params, {}, name);
        auto eval = [](double u, double v) -> JetVec3<3> {
            return {J::var_u(u), J::var_v(v), J::constant(0.0)};
        };
        return SurfaceChart(name, {}, Rect{-1.0, 1.0, -1.0, 1.0}, {}, eval,
                            /*isoparametric=*/true);
    }
    if (name == "ellipsoid") {
        reject_unknown(params, {"a", "b", "c"}, name);
        const double A = take_param(params, "a", 1.0);
        const double B = take_param(params, "b", 1.0);
        const double C = take_param(params, "c", 2.0);
        require_positive(A, "a");
        require_positive(B, "b");
        require_positive(C, "c");
        auto eval = [A, B, C](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            return {A * (sin(ju) * cos(jv)), B * (sin(ju) * sin(jv)), C * cos(ju)};
        };
        return SurfaceChart(name, {{"a", A}, {"b", B}, {"c", C}},
                            Rect{0.5, M_PI - 0.5, 0.0, 6.0}, {}, eval);
    }
    if (name == "torus") {
        reject_unknown(params, {"R", "r"}, name);
        const double R = take_param(params, "R", 2.0);
        const double r = take_param(params, "r", 0.7);
        require_positive(r, "r");
        if (!(R > r)) throw InvalidParams("torus requires R > r");
        auto eval = [R, r](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            const J w = R + r * cos(ju);
            return {w * cos(jv), w * sin(jv), r * sin(ju)};
        };
        return SurfaceChart(name, {{"R", R}, {"r", r}}, Rect{0.0, 6.0, 0.0, 6.0}, {}, eval);
    }
    if (name == "catenoid") {
        reject_unknown(params, {"scale"}, name);
        const double c = take_param(params, "scale", 1.0);
        require_positive(c, "scale");
        auto eval = [c](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            const J w = c * cosh((1.0 / c) * ju);
            return {w * cos(jv), w * sin(jv), ju};
        };
        return SurfaceChart(name, {{"scale", c}}, Rect{-1.0, 1.0, 0.0, 6.0}, {}, eval);
    }
    if (name == "graph") {
        reject_unknown(params, {"h"}, name);
        const double h = take_param(params, "h", 0.5);
        if (h == 0.0) throw InvalidParams("h must be nonzero");
        auto eval = [h](double u, double v) -> JetVec3<3> {
            const J ju = J::var_u(u), jv = J::var_v(v);
            // saddle graph: strictly negative Gauss curvature, so no umbilics
            return {ju, jv, h * (ju * ju - jv * jv + 0.5 * (ju * jv))};
        };
        return SurfaceChart(name, {{"h", h}}, Rect{-1.0, 1.0, -1.0, 1.0}, {}, eval);
    }
    throw UnknownSurface("unknown surface '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"sphere", "cylinder", "cone", "plane", "ellipsoid", "torus", "catenoid", "graph"};
}

} // namespace nbgeo
