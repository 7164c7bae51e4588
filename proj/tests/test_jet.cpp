#include <doctest.h>

#include <cmath>

#include "nbgeo/jet.hpp"
#include "nbgeo/rng.hpp"

using namespace nbgeo;

namespace {

// reference function with mixed transcendentals and a quotient
double ref(double u, double v) {
    return std::sin(u) * std::cos(2.0 * v) + u * u * v / (2.0 + std::cosh(u * v)) +
           std::sqrt(1.0 + u * u + v * v);
}

Jet3 ref_jet(double u, double v) {
    const Jet3 ju = Jet3::var_u(u), jv = Jet3::var_v(v);
    return sin(ju) * cos(2.0 * jv) + ju * ju * jv * reciprocal(2.0 + cosh(ju * jv)) +
           sqrt(1.0 + ju * ju + jv * jv);
}

// central finite differences of ref, step tuned per order
double fd_partial(double u, double v, int j, int k) {
    const double h = 1e-4;
    auto fu = [&](double uu, double vv) { return ref(uu, vv); };
    switch (j * 10 + k) {
        case 10: return (fu(u + h, v) - fu(u - h, v)) / (2 * h);
        case 1: return (fu(u, v + h) - fu(u, v - h)) / (2 * h);
        case 20: return (fu(u + h, v) - 2 * fu(u, v) + fu(u - h, v)) / (h * h);
        case 2: return (fu(u, v + h) - 2 * fu(u, v) + fu(u, v - h)) / (h * h);
        case 11:
            return (fu(u + h, v + h) - fu(u + h, v - h) - fu(u - h, v + h) +
                    fu(u - h, v - h)) /
                   (4 * h * h);
        case 30:
            return (fu(u + 2 * h, v) - 2 * fu(u + h, v) + 2 * fu(u - h, v) -
                    fu(u - 2 * h, v)) /
                   (2 * h * h * h);
        case 3:
            return (fu(u, v + 2 * h) - 2 * fu(u, v + h) + 2 * fu(u, v - h) -
                    fu(u, v - 2 * h)) /
                   (2 * h * h * h);
        case 21:
            return ((fu(u + h, v + h) - 2 * fu(u, v + h) + fu(u - h, v + h)) -
                    (fu(u + h, v - h) - 2 * fu(u, v - h) + fu(u - h, v - h))) /
                   (2 * h * h * h);
        case 12:
            return ((fu(u + h, v + h) - 2 * fu(u + h, v) + fu(u + h, v - h)) -
                    (fu(u - h, v + h) - 2 * fu(u - h, v) + fu(u - h, v - h))) /
                   (2 * h * h * h);
    }
    return 0.0;
}

} // namespace

TEST_CASE("jet arithmetic reproduces finite-difference derivatives") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double u = rng.uniform(-1.0, 1.0);
        const double v = rng.uniform(-1.0, 1.0);
        const Jet3 J = ref_jet(u, v);
        CHECK(J.value() == doctest::Approx(ref(u, v)).epsilon(1e-14));
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; j + k <= 3; ++k) {
                if (j + k == 0) continue;
                const double fd = fd_partial(u, v, j, k);
                // third-order FD stencils are only good to ~1e-4 relative
                const double tol = (j + k == 3) ? 2e-3 : 1e-5;
                CHECK(J.partial(j, k) ==
                      doctest::Approx(fd).epsilon(tol).scale(1.0 + std::abs(fd)));
            }
    }
}

TEST_CASE("jet derive_u/derive_v shift coefficients") {
    const double u = 0.3, v = -0.7;
    const Jet3 J = ref_jet(u, v);
    const Jet2 Ju = J.derive_u();
    const Jet2 Jv = J.derive_v();
    CHECK(Ju.value() == doctest::Approx(J.partial(1, 0)).epsilon(1e-15));
    CHECK(Jv.value() == doctest::Approx(J.partial(0, 1)).epsilon(1e-15));
    CHECK(Ju.partial(1, 0) == doctest::Approx(J.partial(2, 0)).epsilon(1e-15));
    CHECK(Ju.partial(1, 1) == doctest::Approx(J.partial(2, 1)).epsilon(1e-15));
    CHECK(Jv.partial(0, 2) == doctest::Approx(J.partial(0, 3)).epsilon(1e-15));
}

TEST_CASE("jet division and sqrt invert multiplication") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const double u = rng.uniform(-1, 1), v = rng.uniform(-1, 1);
        const Jet3 ju = Jet3::var_u(u), jv = Jet3::var_v(v);
        const Jet3 w = 2.0 + sin(ju) + ju * jv;
        const Jet3 one = w * reciprocal(w);
        const Jet3 back = sqrt(w) * sqrt(w);
        for (int j = 0; j <= 3; ++j)
            for (int k = 0; j + k <= 3; ++k) {
                const double expected = (j + k == 0) ? 1.0 : 0.0;
                CHECK(one.coeff(j, k) == doctest::Approx(expected).epsilon(1e-13));
                CHECK(back.coeff(j, k) ==
                      doctest::Approx(w.coeff(j, k)).epsilon(1e-13).scale(1.0));
            }
    }
}

TEST_CASE("jet swap_uv transposes mixed partials") {
    const Jet3 J = ref_jet(0.4, 0.9);
    const Jet3 S = J.swap_uv();
    CHECK(S.partial(1, 0) == J.partial(0, 1));
    CHECK(S.partial(2, 1) == J.partial(1, 2));
    CHECK(S.partial(0, 3) == J.partial(3, 0));
}
