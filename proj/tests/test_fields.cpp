#include "doctest.h"

#include <cmath>

#include "landau_ee/fields.hpp"

using namespace landau_ee;

TEST_CASE("tameness parameters") {
    CHECK(TamenessParams(2, 0.5).n0() == 2);
    CHECK(TamenessParams(2, 0.3).n0() == 2);
    CHECK(TamenessParams(2, 0.2).n0() == 3);
    CHECK(TamenessParams(2, 0.25).n0() == 3);
    CHECK_THROWS_AS(TamenessParams(2, 1.2), ValidationError);
    CHECK_THROWS_AS(TamenessParams(2, 0.0), ValidationError);
}

TEST_CASE("enclosed flux of the radial profiles") {
    RadialProfile g{ProfileKind::gaussian, 0.3, 1.2, 2.0, {}};
    CHECK(g.enclosed_flux(2.0) == doctest::Approx(kPi * 0.3 * 1.44 * (1.0 - std::exp(-4.0 / 1.44))).epsilon(1e-14));
    RadialProfile p{ProfileKind::power_law, 0.5, 1.0, 3.0, {}};
    // 2 pi a int_0^r rho (1 + rho^2)^{-3/2} = 2 pi a (1 - (1 + r^2)^{-1/2})
    CHECK(p.enclosed_flux(1.5) == doctest::Approx(2 * kPi * 0.5 * (1.0 - 1.0 / std::sqrt(1.0 + 2.25))).epsilon(1e-12));
}

TEST_CASE("gauge of a centred gaussian bump") {
    const Point c{0.5, -0.25};
    const auto f = FieldFamily::gaussian_bump(0.3, 1.0, c);
    for (Point x : {Point{1.0, 2.0}, Point{-3.0, 0.5}, Point{0.5, 0.0}}) {
        const Point d = x - c;
        const double r2 = norm2(d);
        const double flux = kPi * 0.3 * (1.0 - std::exp(-r2));
        const Point expect = (flux / (2.0 * kPi * r2)) * apply_j(d);
        const Point a = gauge_closed_form(f, x);
        CHECK(std::abs(a.x - expect.x) < 1e-15);
        CHECK(std::abs(a.y - expect.y) < 1e-15);
    }
}

TEST_CASE("closed form agrees with quadrature, curl and divergence") {
    const TamenessParams t(2, 0.5);
    const FieldFamily fams[] = {FieldFamily::gaussian_bump(0.3, 1.0, {0.5, -0.25}, t),
                                FieldFamily::power_law(0.3, 2.5, {-0.2, 0.4}, t),
                                FieldFamily::gaussian_bump(0.2, 0.5, {1, 1}, t).plus(
                                    FieldFamily::power_law(-0.1, 1.6, {0, 0}, t))};
    for (const auto& f : fams) {
        for (const Point& x : audit_points(20, 0.05, 50.0)) {
            const auto cd = curl_div_check(f, x, 1e-3);
            CHECK(std::abs(cd.curl_error) < 1e-4);
            CHECK(std::abs(cd.div_error) < 1e-4);
            const Point a = gauge_closed_form(f, x);
            const Point b = gauge_quadrature(f, x).value;
            CHECK(std::sqrt(norm2(a - b)) < 1e-6);
        }
    }
}

TEST_CASE("family validation") {
    const TamenessParams t(2, 0.5);
    CHECK_THROWS_AS(FieldFamily::power_law(0.3, 1.2, {}, t), ValidationError);
    CHECK_NOTHROW(PotentialFamily::power_law(0.3, 0.6, {}, t));
    CHECK_THROWS_AS(PotentialFamily::power_law(0.3, 0.4, {}, t), ValidationError);
    CHECK(std::isinf(PotentialFamily::constant_for_testing(1.0).decay_constant()));
    CHECK(FieldFamily::zero().is_zero());
}

TEST_CASE("decay bounds hold on samples") {
    const TamenessParams t(2, 0.5);
    const auto f = FieldFamily::gaussian_bump(0.3, 1.0, {2, -1}, t).plus(FieldFamily::power_law(0.2, 1.7, {-1, 0}, t));
    const double C = f.decay_constant();
    for (const Point& x : audit_points(200, 0.01, 1e4)) {
        CHECK(std::abs(f.eval(x)) * std::pow(1.0 + std::sqrt(norm2(x)), 1.5) <= C * (1.0 + 1e-12));
    }
}

TEST_CASE("pseudo potential") {
    const auto f = FieldFamily::gaussian_bump(0.3, 1.0, {});
    const auto v = PotentialFamily::gaussian(0.2, 1.0, {});
    const Point x{0.7, 0.2};
    CHECK(pseudo_potential(f, v, x) == doctest::Approx(norm2(gauge_closed_form(f, x)) + v.eval(x)).epsilon(1e-15));
}
