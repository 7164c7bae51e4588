#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace nbgeo {

/// Bivariate truncated Taylor polynomial ("jet") of total order N around a
/// base point. Arithmetic on jets propagates exact partial derivatives up to
/// order N, which is how the surface catalog supplies order-3 jets without
/// hand-coded third derivatives.
///
/// Coefficients are Taylor coefficients: value(u0+du, v0+dv) =
/// sum_{j+k<=N} c[j,k] du^j dv^k, so the partial derivative d^{j+k}/du^j dv^k
/// equals c[j,k] * j! * k!.
template <int N>
class Jet {
public:
    static constexpr int kOrder = N;
    static constexpr int kCoeffs = (N + 1) * (N + 2) / 2;

    // graded index: total degree d = j+k blocks, ordered by k inside a block
    static constexpr int index(int j, int k) {
        const int d = j + k;
        return d * (d + 1) / 2 + k;
    }

    constexpr Jet() : c_{} {}

    static Jet constant(double x) {
        Jet r;
        r.c_[0] = x;
        return r;
    }
    /// The coordinate u as a jet based at u0.
    static Jet var_u(double u0) {
        Jet r;
        r.c_[0] = u0;
        if constexpr (N >= 1) r.c_[index(1, 0)] = 1.0;
        return r;
    }
    static Jet var_v(double v0) {
        Jet r;
        r.c_[0] = v0;
        if constexpr (N >= 1) r.c_[index(0, 1)] = 1.0;
        return r;
    }

    double value() const { return c_[0]; }

    double coeff(int j, int k) const { return c_[index(j, k)]; }
    double& coeff(int j, int k) { return c_[index(j, k)]; }

    /// Partial derivative value d^{j+k} f / du^j dv^k.
    double partial(int j, int k) const {
        static constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
        return c_[index(j, k)] * fact[j] * fact[k];
    }

    Jet operator-() const {
        Jet r;
        for (int i = 0; i < kCoeffs; ++i) r.c_[i] = -c_[i];
        return r;
    }
    Jet& operator+=(const Jet& o) {
        for (int i = 0; i < kCoeffs; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int i = 0; i < kCoeffs; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator+=(double s) {
        c_[0] += s;
        return *this;
    }
    Jet& operator-=(double s) {
        c_[0] -= s;
        return *this;
    }
    Jet& operator*=(double s) {
        for (int i = 0; i < kCoeffs; ++i) c_[i] *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int d1 = 0; d1 <= N; ++d1)
            for (int k1 = 0; k1 <= d1; ++k1) {
                const double ac = a.c_[d1 * (d1 + 1) / 2 + k1];
                if (ac == 0.0) continue;
                for (int d2 = 0; d2 + d1 <= N; ++d2)
                    for (int k2 = 0; k2 <= d2; ++k2)
                        r.c_[index(d1 + d2 - k1 - k2, k1 + k2)] +=
                            ac * b.c_[d2 * (d2 + 1) / 2 + k2];
            }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

    /// Composition with a univariate function given its derivative values
    /// f[0..N] at value(). Exact at truncation order N since the
    /// zero-constant part of the jet is nilpotent of order N+1.
    static Jet compose(const Jet& w, const std::array<double, N + 1>& f) {
        static constexpr double inv_fact[4] = {1.0, 1.0, 0.5, 1.0 / 6.0};
        Jet delta = w;
        delta.c_[0] = 0.0;
        Jet r = constant(f[N] * inv_fact[N]);
        for (int d = N - 1; d >= 0; --d) {
            r = r * delta;
            r.c_[0] += f[d] * inv_fact[d];
        }
        return r;
    }

    friend Jet reciprocal(const Jet& w) {
        const double x = w.value();
        std::array<double, N + 1> f{};
        double p = 1.0 / x;
        for (int d = 0; d <= N; ++d) {
            f[d] = p;                         // d-th derivative of 1/x times (-1)^d d!/x^{d+1}
            p *= -(d + 1.0) / x;
        }
        return compose(w, f);
    }

    friend Jet sqrt(const Jet& w) {
        const double x = w.value();
        const double s = std::sqrt(x);
        std::array<double, N + 1> f{};
        f[0] = s;
        if constexpr (N >= 1) f[1] = 0.5 / s;
        if constexpr (N >= 2) f[2] = -0.25 / (s * x);
        if constexpr (N >= 3) f[3] = 0.375 / (s * x * x);
        return compose(w, f);
    }

    friend Jet sin(const Jet& w) {
        const double s = std::sin(w.value()), c = std::cos(w.value());
        std::array<double, N + 1> f{};
        const double cyc[4] = {s, c, -s, -c};
        for (int d = 0; d <= N; ++d) f[d] = cyc[d % 4];
        return compose(w, f);
    }
    friend Jet cos(const Jet& w) {
        const double s = std::sin(w.value()), c = std::cos(w.value());
        std::array<double, N + 1> f{};
        const double cyc[4] = {c, -s, -c, s};
        for (int d = 0; d <= N; ++d) f[d] = cyc[d % 4];
        return compose(w, f);
    }
    friend Jet sinh(const Jet& w) {
        const double s = std::sinh(w.value()), c = std::cosh(w.value());
        std::array<double, N + 1> f{};
        for (int d = 0; d <= N; ++d) f[d] = (d % 2 == 0) ? s : c;
        return compose(w, f);
    }
    friend Jet cosh(const Jet& w) {
        const double s = std::sinh(w.value()), c = std::cosh(w.value());
        std::array<double, N + 1> f{};
        for (int d = 0; d <= N; ++d) f[d] = (d % 2 == 0) ? c : s;
        return compose(w, f);
    }
    friend Jet exp(const Jet& w) {
        const double e = std::exp(w.value());
        std::array<double, N + 1> f{};
        for (int d = 0; d <= N; ++d) f[d] = e;
        return compose(w, f);
    }
    friend Jet log(const Jet& w) {
        const double x = w.value();
        std::array<double, N + 1> f{};
        f[0] = std::log(x);
        double p = 1.0 / x;
        for (int d = 1; d <= N; ++d) {
            f[d] = p;
            p *= -static_cast<double>(d) / x;
        }
        return compose(w, f);
    }

    friend Jet pow(const Jet& w, int e) {
        if (e == 0) return constant(1.0);
        if (e < 0) return reciprocal(pow(w, -e));
        Jet r = w;
        for (int i = 1; i < e; ++i) r = r * w;
        return r;
    }

    /// Jet of the u-partial, one order lower.
    Jet<N - 1> derive_u() const {
        Jet<N - 1> r;
        for (int j = 0; j + 1 <= N; ++j)
            for (int k = 0; j + k + 1 <= N; ++k)
                r.coeff(j, k) = (j + 1) * c_[index(j + 1, k)];
        return r;
    }
    Jet<N - 1> derive_v() const {
        Jet<N - 1> r;
        for (int j = 0; j + 1 <= N; ++j)
            for (int k = 0; j + k + 1 <= N; ++k)
                r.coeff(j, k) = (k + 1) * c_[index(j, k + 1)];
        return r;
    }

    template <int M>
    Jet<M> truncate() const {
        static_assert(M <= N);
        Jet<M> r;
        for (int j = 0; j <= M; ++j)
            for (int k = 0; j + k <= M; ++k) r.coeff(j, k) = c_[index(j, k)];
        return r;
    }

    /// Jet of the same function with the roles of u and v exchanged.
    Jet swap_uv() const {
        Jet r;
        for (int j = 0; j <= N; ++j)
            for (int k = 0; j + k <= N; ++k) r.coeff(k, j) = c_[index(j, k)];
        return r;
    }

private:
    std::array<double, kCoeffs> c_;
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

template <int N>
using JetVec3 = std::array<Jet<N>, 3>;

template <int N>
JetVec3<N> operator+(const JetVec3<N>& a, const JetVec3<N>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <int N>
JetVec3<N> operator-(const JetVec3<N>& a, const JetVec3<N>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
template <int N>
JetVec3<N> operator*(const Jet<N>& s, const JetVec3<N>& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

template <int N>
Jet<N> dot(const JetVec3<N>& a, const JetVec3<N>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <int N>
JetVec3<N> cross(const JetVec3<N>& a, const JetVec3<N>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

template <int N>
JetVec3<N> normalized(const JetVec3<N>& a) {
    const Jet<N> inv = reciprocal(sqrt(dot(a, a)));
    return {a[0] * inv, a[1] * inv, a[2] * inv};
}

template <int N>
JetVec3<N - 1> derive_u(const JetVec3<N>& a) {
    return {a[0].derive_u(), a[1].derive_u(), a[2].derive_u()};
}
template <int N>
JetVec3<N - 1> derive_v(const JetVec3<N>& a) {
    return {a[0].derive_v(), a[1].derive_v(), a[2].derive_v()};
}

} // namespace nbgeo
