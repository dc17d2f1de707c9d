#include "doctest.h"

#include <cmath>

#include "landau_ee/landau.hpp"

using namespace landau_ee;

namespace {

// (-i grad - A0)^2 f = -lap f + 2i A0.grad f + |A0|^2 f   (div A0 = 0), by central differences.
cplx magnetic_laplacian(double B0, int l, int m, Point x, double h) {
    auto f = [&](Point p) { return landau_orbital(B0, l, m, p); };
    const cplx c = f(x);
    const cplx fxp = f(x + Point{h, 0}), fxm = f(x - Point{h, 0});
    const cplx fyp = f(x + Point{0, h}), fym = f(x - Point{0, h});
    const cplx lap = (fxp + fxm + fyp + fym - 4.0 * c) / (h * h);
    const cplx dx = (fxp - fxm) / (2.0 * h), dy = (fyp - fym) / (2.0 * h);
    const Point a = 0.5 * B0 * apply_j(x);
    return -lap + cplx(0.0, 2.0) * (a.x * dx + a.y * dy) + norm2(a) * c;
}

}  // namespace

TEST_CASE("orbitals are eigenfunctions of H0") {
    const double B0 = 1.3;
    for (int l = 0; l <= 3; ++l) {
        for (int m : {0, 1, 4, 9}) {
            for (Point x : {Point{0.4, -0.7}, Point{1.5, 0.9}, Point{-2.2, 0.3}}) {
                const cplx hphi = magnetic_laplacian(B0, l, m, x, 1e-4);
                const cplx e = B0 * (2.0 * l + 1.0) * landau_orbital(B0, l, m, x);
                CHECK(std::abs(hphi - e) < 2e-5);
            }
        }
    }
}

TEST_CASE("orbitals are orthonormal") {
    // Angular integral is exact on a uniform grid; radial by composite Gauss-Legendre.
    const double B0 = 1.0;
    const int nt = 64;
    const Rule1D rr = composite_gauss_legendre(16, 40, 0.0, 14.0);
    for (auto [a, b] : {std::pair{BasisIndex{0, 0}, BasisIndex{0, 0}}, std::pair{BasisIndex{2, 3}, BasisIndex{2, 3}},
                        std::pair{BasisIndex{1, 2}, BasisIndex{3, 2}}, std::pair{BasisIndex{1, 1}, BasisIndex{1, 2}}}) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < rr.size(); ++i) {
            const double r = rr.nodes[i];
            for (int j = 0; j < nt; ++j) {
                const double th = 2.0 * kPi * j / nt;
                const Point x{r * std::cos(th), r * std::sin(th)};
                s += std::conj(landau_orbital(B0, a.l, a.m, x)) * landau_orbital(B0, b.l, b.m, x) * r * rr.weights[i];
            }
        }
        s *= 2.0 * kPi / nt;
        CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("p_l kernel") {
    const double B0 = 1.0;
    CHECK(std::abs(pl_kernel(B0, 3, {0.3, 0.2}, {0.3, 0.2}) - B0 / (2.0 * kPi)) < 1e-15);
    // |p_2| at distance 1: L_2(1/2) e^{-1/4} / 2 pi
    CHECK(std::abs(pl_kernel(B0, 2, {0.1, 0.4}, {0.7, 1.2})) == doctest::Approx(0.0154937492887066208).epsilon(1e-13));
    // Hermitian kernel
    const Point x{0.3, -1.0}, y{1.1, 0.5};
    CHECK(std::abs(pl_kernel(B0, 1, x, y) - std::conj(pl_kernel(B0, 1, y, x))) < 1e-16);
}

TEST_CASE("completeness: sum over guiding centres reproduces p_l") {
    const double B0 = 1.0;
    for (int l = 0; l <= 3; ++l) {
        for (auto [x, y] : {std::pair{Point{0, 0}, Point{1, 0}}, std::pair{Point{2.0, -1.0}, Point{-1.5, 3.0}}}) {
            cplx s = 0.0;
            for (int m = 0; m < 120; ++m) s += landau_orbital(B0, l, m, x) * std::conj(landau_orbital(B0, l, m, y));
            CHECK(std::abs(s - pl_kernel(B0, l, x, y)) < 1e-12);
        }
    }
}

TEST_CASE("q_t generating function and covariance") {
    const double B0 = 2.0;
    const Point x{0.3, 0.1}, y{-0.4, 0.8}, v{0.7, -1.3};
    cplx s = 0.0;
    for (int l = 0; l <= 60; ++l) s += std::pow(0.3, l) * pl_kernel(B0, l, x, y);
    CHECK(std::abs(s - qt_kernel(B0, 0.3, x, y)) < 1e-13);
    const cplx ph = translation_phase(B0, v, x, y);
    CHECK(std::abs(qt_kernel(B0, 0.3, x + v, y + v) - qt_kernel(B0, 0.3, x, y) * ph) < 1e-14);
    CHECK(std::abs(pl_kernel(B0, 2, x + v, y + v) - pl_kernel(B0, 2, x, y) * ph) < 1e-14);
    CHECK_THROWS_AS(qt_kernel(B0, 1.0, x, y), DomainError);
}

TEST_CASE("q_t covariant gradient against finite differences") {
    const double B0 = 1.0, t = 0.4, h = 1e-5;
    const Point x{0.5, -0.2}, y{-0.3, 0.6};
    const CVec2 g = qt_covariant_gradient(B0, t, x, y);
    const Point a = 0.5 * B0 * apply_j(x);
    const cplx q = qt_kernel(B0, t, x, y);
    const cplx dx = (qt_kernel(B0, t, x + Point{h, 0}, y) - qt_kernel(B0, t, x - Point{h, 0}, y)) / (2 * h);
    const cplx dy = (qt_kernel(B0, t, x + Point{0, h}, y) - qt_kernel(B0, t, x - Point{0, h}, y)) / (2 * h);
    CHECK(std::abs(g[0] - (cplx(0, -1) * dx - a.x * q)) < 1e-9);
    CHECK(std::abs(g[1] - (cplx(0, -1) * dy - a.y * q)) < 1e-9);
}

TEST_CASE("M kernel by the t-integral") {
    // Independent oracle: (e^{-s/2} / 2 pi) int_0^1 exp(-t^2 s / (1 - t^2)) / (1 - t^2) dt, s = 1/2.
    const auto r = m_kernel_via_integral(1.0, CofiniteLevelSet::all(), 0.0, {0, 0}, {1, 0});
    CHECK(std::abs(r.value - cplx(0.122669209635348047, 0.0)) < 1e-11);
    // Excluding a level subtracts exactly that level's pole term.
    const Point x{0.2, 0.1}, y{-0.5, 0.9};
    const cplx zeta(0.4, 0.3);
    const auto all = m_kernel_via_integral(1.0, CofiniteLevelSet::all(), zeta, x, y);
    const auto but1 = m_kernel_via_integral(1.0, CofiniteLevelSet::all_but(1), zeta, x, y);
    CHECK(std::abs(all.value - but1.value - pl_kernel(1.0, 1, x, y) / (3.0 - zeta)) < 1e-10);
}

TEST_CASE("ladder operators") {
    const LandauBasisSpec spec(1.5, 4, 6);
    const CMatrix up = ladder_matrix(spec, Ladder::raise);
    const CMatrix down = ladder_matrix(spec, Ladder::lower);
    CHECK((down - up.adjoint()).norm() < 1e-14);
    // B0 a- a+ = H0 + B0 on levels below the top one.
    const CMatrix lhs = spec.B0() * down * up;
    for (int i = 0; i < spec.dim(); ++i) {
        const BasisIndex b = spec.at(i);
        if (b.l == spec.l_max()) continue;
        CHECK(std::abs(lhs(i, i) - (spec.level_energy(b.l) + spec.B0())) < 1e-13);
    }
    CVector e = CVector::Zero(spec.dim());
    e(spec.index({4, 2})) = 1.0;
    CHECK(ladder_apply(spec, Ladder::raise, e).truncated);
    const auto r = ladder_apply(spec, Ladder::lower, e);
    CHECK(std::abs(r.v(spec.index({3, 2})) - std::sqrt(8.0)) < 1e-14);
}

TEST_CASE("resolvent diagonals") {
    const LandauBasisSpec spec(1.0, 3, 2);
    const LevelDiagonal t = t_operator(spec, 1);
    CHECK(std::abs(t.at_level(0) - (-0.5)) < 1e-15);
    CHECK(t.at_level(1) == 0.0);
    CHECK(std::abs(t.at_level(3) - 0.25) < 1e-15);
    CHECK_THROWS_AS(m_resolvent_diag(spec, CofiniteLevelSet::all(), {cplx(3.0, 0.0)}), SingularityError);
    const auto m = m_resolvent_diag(spec, CofiniteLevelSet::all_but(1), {cplx(3.0, 0.0)});
    CHECK(m.at_level(1) == 0.0);
    CHECK_THROWS_AS(LandauBasisSpec(1.0, 2, 0), DomainError);
}
