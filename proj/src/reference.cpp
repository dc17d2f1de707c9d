#include "landau_ee/reference.hpp"

#include <cmath>

namespace landau_ee::reference {

namespace {

// Orbitals of levels 0..l_top at one point, index l * m_max + m.
std::vector<cplx> orbitals_at(double B0, int l_top, int m_max, Point x) {
    std::vector<cplx> v(static_cast<std::size_t>(l_top + 1) * m_max);
    for (int l = 0; l <= l_top; ++l) {
        for (int m = 0; m < m_max; ++m) v[static_cast<std::size_t>(l) * m_max + m] = landau_orbital(B0, l, m, x);
    }
    return v;
}

}  // namespace

CMatrix heps_raw(const LandauBasisSpec& spec, const FieldFamily& field, const PotentialFamily& potential,
                 const QuadratureGrid& grid) {
    const int dim = spec.dim(), mm = spec.m_max();
    const double sb = std::sqrt(spec.B0());
    CMatrix out = CMatrix::Zero(dim, dim);
    const Rule1D radial = grid.radial_rule();
    for (std::size_t k = 0; k < radial.size(); ++k) {
        const double r = radial.nodes[k];
        for (int j = 0; j < grid.n_angular; ++j) {
            const double th = grid.angle(j);
            const Point x{r * std::cos(th), r * std::sin(th)};
            const double w = radial.weights[k] * r * 2.0 * kPi / grid.n_angular;
            const Point a = gauge_closed_form(field, x);
            const double wpot = norm2(a) + potential.eval(x);
            const cplx gm(a.x, -a.y), gp(a.x, a.y);
            const auto phi = orbitals_at(spec.B0(), spec.l_max() + 1, mm, x);
            for (int jj = 0; jj < dim; ++jj) {
                const int l = jj / mm, m = jj % mm;
                // (W + 2 A.Pi) phi_j at x
                cplx hphi = wpot * phi[jj] + sb * std::sqrt(2.0 * l + 2.0) * gm * phi[(l + 1) * mm + m];
                if (l > 0) hphi += sb * std::sqrt(2.0 * l) * gp * phi[(l - 1) * mm + m];
                for (int ii = 0; ii < dim; ++ii) out(ii, jj) += w * std::conj(phi[ii]) * hphi;
            }
        }
    }
    return out;
}

CMatrix gram(const LandauBasisSpec& spec, const QuadratureGrid& grid) {
    const int dim = spec.dim();
    CMatrix out = CMatrix::Zero(dim, dim);
    const Rule1D radial = grid.radial_rule();
    for (std::size_t k = 0; k < radial.size(); ++k) {
        const double r = radial.nodes[k];
        for (int j = 0; j < grid.n_angular; ++j) {
            const double th = grid.angle(j);
            const double w = radial.weights[k] * r * 2.0 * kPi / grid.n_angular;
            const auto phi = orbitals_at(spec.B0(), spec.l_max(), spec.m_max(), {r * std::cos(th), r * std::sin(th)});
            for (int jj = 0; jj < dim; ++jj) {
                for (int ii = 0; ii < dim; ++ii) out(ii, jj) += w * std::conj(phi[ii]) * phi[jj];
            }
        }
    }
    return out;
}

CMatrix overlap(const LandauBasisSpec& spec, const RegionSpec& region, double L, const QuadratureGrid& grid,
                int n_1d) {
    const int dim = spec.dim();
    CMatrix out = CMatrix::Zero(dim, dim);
    auto accumulate = [&](Point x, double w) {
        const auto phi = orbitals_at(spec.B0(), spec.l_max(), spec.m_max(), x);
        for (int jj = 0; jj < dim; ++jj) {
            for (int ii = 0; ii < dim; ++ii) out(ii, jj) += w * std::conj(phi[ii]) * phi[jj];
        }
    };
    if (region.shape == RegionShape::disk) {
        const double top = std::min(L * region.size, grid.R_max);
        if (top <= 0.0) return out;
        const Rule1D radial = gauss_legendre(grid.n_radial, 0.0, top);
        for (std::size_t k = 0; k < radial.size(); ++k) {
            for (int j = 0; j < grid.n_angular; ++j) {
                const double r = radial.nodes[k], th = grid.angle(j);
                accumulate({r * std::cos(th), r * std::sin(th)}, radial.weights[k] * r * 2.0 * kPi / grid.n_angular);
            }
        }
    } else {
        const double half = std::min(0.5 * L * region.size, grid.R_max);
        if (half <= 0.0) return out;
        const Rule1D rule = gauss_legendre(n_1d, -half, half);
        for (int a = 0; a < n_1d; ++a) {
            for (int b = 0; b < n_1d; ++b) accumulate({rule.nodes[a], rule.nodes[b]}, rule.weights[a] * rule.weights[b]);
        }
    }
    return out;
}

CMatrix riesz_projection(const CMatrix& h, const ContourSpec& contour) {
    contour.validate();
    const auto n = h.rows();
    CMatrix out = CMatrix::Zero(n, n);
    for (int k = 0; k < contour.n_nodes; ++k) {
        const CMatrix shifted = h - contour.node(k) * CMatrix::Identity(n, n);
        out += contour.weight(k) * shifted.fullPivLu().inverse();
    }
    return out;
}

CMatrix contour_lhs(const LandauBasisSpec& spec, const CMatrix& heps, int l, int k, int n_nodes) {
    const ContourSpec contour{spec.level_energy(l), spec.B0(), n_nodes};
    const CMatrix h0 = assemble_h0(spec).m;
    const auto n = h0.rows();
    CMatrix out = CMatrix::Zero(n, n);
    for (int q = 0; q < n_nodes; ++q) {
        const CMatrix r0 = (h0 - contour.node(q) * CMatrix::Identity(n, n)).fullPivLu().inverse();
        CMatrix term = r0;
        for (int j = 0; j < k; ++j) term = (term * heps * r0).eval();
        out += contour.weight(q) * term;
    }
    return out;
}

}  // namespace landau_ee::reference
