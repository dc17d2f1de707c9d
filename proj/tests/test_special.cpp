#include "doctest.h"

#include <cmath>

#include "landau_ee/special.hpp"

using namespace landau_ee;

// Reference values from arbitrary-precision evaluation.
TEST_CASE("laguerre values") {
    CHECK(laguerre_eval(0, 3.7) == 1.0);
    CHECK(laguerre_eval(1, 3.7) == doctest::Approx(-2.7).epsilon(1e-15));
    CHECK(laguerre_eval(5, 2.3) == doctest::Approx(0.965325583333333240).epsilon(1e-13));
    CHECK(laguerre_eval(40, 7.0) == doctest::Approx(1.55516810304422457).epsilon(1e-11));
    CHECK(assoc_laguerre(3, 1.5, 0.7) == doctest::Approx(2.09533333333333355).epsilon(1e-13));
}

TEST_CASE("laguerre generating function against explicit sum") {
    for (double s : {0.0, 0.5, 3.0}) {
        for (double t : {-0.5, 0.2, 0.45}) {
            double sum = 0.0;
            for (int l = 0; l <= 120; ++l) sum += std::pow(t, l) * laguerre_eval(l, s);
            CHECK(std::abs(sum - laguerre_genfun(s, t)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(laguerre_genfun(1.0, 1.0), DomainError);
}

TEST_CASE("renyi entropy values") {
    CHECK(renyi_h(RenyiOrder(0.5), 0.3) == doctest::Approx(0.650508505098256008).epsilon(1e-14));
    CHECK(renyi_h(RenyiOrder(1.0), 0.3) == doctest::Approx(0.610864302054893454).epsilon(1e-14));
    CHECK(renyi_h(RenyiOrder(2.0), 0.3) == doctest::Approx(0.544727175441672016).epsilon(1e-14));
    CHECK(renyi_h(RenyiOrder(3.0), 0.3) == doctest::Approx(0.497126136671933444).epsilon(1e-14));
    CHECK(renyi_h(RenyiOrder(1.0), 0.0) == 0.0);
    CHECK(renyi_h(RenyiOrder(2.0), 1.0) == 0.0);
    CHECK(renyi_h(RenyiOrder(1.0), 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("h symmetric, decreasing in alpha, and equal to g(4x(1-x))") {
    for (int k = 1; k < 200; ++k) {
        const double x = k / 200.0;
        double prev = 1e300;
        for (double a : {0.25, 0.5, 1.0, 2.0, 5.0}) {
            const RenyiOrder al(a);
            const double h = renyi_h(al, x);
            CHECK(std::abs(h - renyi_h(al, 1.0 - x)) < 1e-13);
            CHECK(std::abs(g_of_t(al, 4.0 * x * (1.0 - x)) - h) < 1e-12);
            CHECK(h <= prev + 1e-15);
            prev = h;
        }
    }
}

TEST_CASE("order and clipping preconditions") {
    CHECK_THROWS_AS(RenyiOrder(0.0), DomainError);
    CHECK_THROWS_AS(RenyiOrder(-1.0), DomainError);
    CHECK(clip_unit(1.0 + 5e-9, "x") == 1.0);
    CHECK(clip_unit(-5e-9, "x") == 0.0);
    CHECK_THROWS_AS(clip_unit(1.0 + 1e-6, "x"), DomainError);
}
