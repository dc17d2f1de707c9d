#include "doctest.h"

#include <cmath>

#include "landau_ee/schatten.hpp"

using namespace landau_ee;

TEST_CASE("norms of a diagonal matrix") {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = cplx(0.0, -4.0);
    CHECK(schatten_pnorm(m, 2.0).value == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(schatten_pnorm(m, 1.0).value == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(schatten_pnorm(m, kSchattenInf).value == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(schatten_pnorm(m, 0.5).value == doctest::Approx(std::pow(std::sqrt(3.0) + 2.0, 2.0)).epsilon(1e-14));
    CHECK(schatten_power(singular_values(m), 0.5) == doctest::Approx(std::sqrt(3.0) + 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(schatten_pnorm(m, 0.0), DomainError);
    CHECK(schatten_pnorm(CMatrix::Zero(2, 2), 0.3).value == 0.0);
}

TEST_CASE("quasi-norms ignore rounding noise of rank-deficient products") {
    CMatrix s = CMatrix::Random(6, 30);
    const CMatrix g = s.adjoint() * s;  // rank 6 in dimension 30
    const double p = 0.3;
    CHECK(std::abs(std::pow(schatten_pnorm(s, p).value, 2.0) / schatten_pnorm(g, p / 2).value - 1.0) < 1e-10);
}

TEST_CASE("property suite passes") {
    for (const auto& c : schatten_property_suite(1, 100, 1e-9)) {
        INFO(c.name);
        CHECK(c.trials == 100);
        CHECK(c.passed());
        CHECK(c.worst_slack >= -1e-9);
    }
    CHECK(schatten_property_suite(7, 10).size() == 11);
}
