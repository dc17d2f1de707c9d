#include "doctest.h"

#include <cmath>
#include <random>

#include "landau_ee/parallel.hpp"
#include "landau_ee/reference.hpp"
#include "landau_ee/spectral.hpp"

using namespace landau_ee;

namespace {

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = cplx(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}

const TamenessParams kT(2, 0.5);

CMatrix bump_heps(const LandauBasisSpec& spec) {
    return assemble_heps(spec, FieldFamily::gaussian_bump(0.3, 1.0, {0.5, -0.25}, kT), PotentialFamily::zero(kT),
                         default_grid(spec))
        .m;
}

}  // namespace

TEST_CASE("eigendecomposition") {
    std::mt19937_64 rng(3);
    const CMatrix h = random_hermitian(rng, 30);
    const auto e = EigenDecomposition::of(h);
    CHECK(e.residual(h) < 1e-12);
    CHECK(e.orthonormality_error() < 1e-13);
    for (int i = 1; i < 30; ++i) CHECK(e.eigenvalues(i) >= e.eigenvalues(i - 1));
}

TEST_CASE("fermi projection and endpoint rule") {
    const CMatrix h = RVector::LinSpaced(5, 1.0, 5.0).cast<cplx>().asDiagonal();
    const Projection p = fermi_projection(h, {1.5, 3.5}, 1e-8);
    CHECK(p.rank == 2);
    CHECK(std::abs(p.p.trace() - 2.0) < 1e-14);
    CHECK((p.p * p.p - p.p).norm() < 1e-14);
    CHECK_THROWS_AS(fermi_projection(h, {2.0, 3.5}, 1e-8), SingularityError);
    const LandauBasisSpec spec(1.0, 3, 4);
    const Projection lp = level_projection(spec, {0.5, 4.0});
    CHECK(lp.rank == 8);
    CHECK_THROWS_AS(level_projection(spec, {1.0, 4.0}), SingularityError);
}

TEST_CASE("riesz projection") {
    const LandauBasisSpec spec(1.0, 2, 10);
    const CMatrix h = assemble_h0(spec).m + bump_heps(spec);
    const ContourSpec c = ContourSpec::through({0.0, 2.0}, 64);
    const CMatrix pr = riesz_projection(h, c);
    CHECK((pr - fermi_projection(h, {0.0, 2.0}, 1e-8).p).norm() < 1e-8);
    CHECK((pr - reference::riesz_projection(h, c)).norm() < 1e-12);
    CHECK_THROWS_AS(ContourSpec({0.0, 1.0, 7}).validate(), DomainError);
}

TEST_CASE("contour sums do not depend on the thread count") {
    const LandauBasisSpec spec(1.0, 2, 12);
    const CMatrix h = assemble_h0(spec).m + bump_heps(spec);
    const ContourSpec c = ContourSpec::through({0.0, 2.0}, 64);
    set_threads(1);
    const CMatrix a = riesz_projection(h, c);
    set_threads(4);
    const CMatrix b = riesz_projection(h, c);
    set_threads(0);
    CHECK(a == b);
}

TEST_CASE("resolvent expansion") {
    std::mt19937_64 rng(11);
    const CMatrix h0 = random_hermitian(rng, 40);
    const CMatrix he = 0.2 * random_hermitian(rng, 40);
    for (int n = 1; n <= 3; ++n) CHECK(resolvent_expansion_residual(h0, he, cplx(0.1, 0.8), n).relative < 1e-12);
}

TEST_CASE("contour terms") {
    const LandauBasisSpec spec(1.0, 4, 8);
    const CMatrix he = bump_heps(spec);
    const auto ids = contour_term_identities(spec, he, 0, 3, 96);
    CHECK(ids[0].frobenius_diff < 1e-12);
    CHECK(ids[1].relative_diff < 1e-12);
    for (int k = 0; k <= 3; ++k) {
        CHECK((ids[k].lhs - reference::contour_lhs(spec, he, 0, k, 96)).norm() < 1e-11);
        const CMatrix r = contour_term_residue(spec, he, 0, k);
        CHECK((ids[k].lhs - r).norm() <= 1e-12 * std::max(1.0, r.norm()));
    }
    // The single-pole closed form misses -(P H P H T^2 + P H T^2 H P + T^2 H P H P) at k = 2.
    const CVector t = t_operator(spec, 0).expand();
    CVector pm = CVector::Zero(spec.dim());
    pm.head(spec.m_max()).setOnes();
    const CMatrix P = pm.asDiagonal(), T = t.asDiagonal(), T2 = T * T;
    const CMatrix missing = -(P * he * P * he * T2 + P * he * T2 * he * P + T2 * he * P * he * P);
    CHECK((ids[2].lhs - ids[2].rhs - missing).norm() < 1e-12);
    CHECK(missing.norm() > 1e-3);
}

TEST_CASE("contour term truncation") {
    const LandauBasisSpec ref(1.0, 8, 8);
    const CMatrix he = bump_heps(ref);
    CHECK(contour_truncation_gap(ref, he, 4, 0, 1, 2, 96) < 1e-13);
    const double g4 = contour_truncation_gap(ref, he, 4, 0, 2, 2, 96);
    const double g6 = contour_truncation_gap(ref, he, 6, 0, 2, 2, 96);
    CHECK(g6 <= g4);
}
