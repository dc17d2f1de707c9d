#pragma once

#include <string>
#include <vector>

#include "landau_ee/fields.hpp"
#include "landau_ee/landau.hpp"
#include "landau_ee/types.hpp"

namespace landau_ee {

/// Polar product grid: Gauss-Legendre in r on [0, R_max], uniform in theta.
struct QuadratureGrid {
    int n_radial = 0;
    int n_angular = 0;
    double R_max = 0.0;
    /// Rotates every angular node; results must not depend on it.
    double angular_offset = 0.0;

    /// Radial nodes and weights (without the Jacobian r).
    Rule1D radial_rule() const;
    double angle(int j) const;
    /// Sum of all 2D weights r_k w_k (2 pi / n_angular); equals pi R_max^2.
    double total_weight() const;
};

/// Default grid for a frame: R_max = outer orbital radius + 5 magnetic lengths,
/// n_radial = 2 m_max + 40, n_angular >= 4 (l_max + m_max - 1) + 20 rounded up to a 5-smooth size.
QuadratureGrid default_grid(const LandauBasisSpec& spec);

/// Dense Hermitian matrix plus the asymmetry it had before (M + M*)/2 was applied.
struct HermitianMatrix {
    CMatrix m;
    double asymmetry = 0.0;

    Eigen::Index dim() const { return m.rows(); }
    static HermitianMatrix hermitize(CMatrix raw);
    /// max |M - M*| of the stored matrix (0 up to rounding after hermitize).
    double hermiticity_residual() const;
};

enum class RegionShape { disk, square };

/// Disk of radius `size` or square of side `size`, both centred at the origin.
struct RegionSpec {
    RegionShape shape = RegionShape::disk;
    double size = 1.0;

    static RegionSpec disk(double r0) { return {RegionShape::disk, r0}; }
    static RegionSpec square(double side) { return {RegionShape::square, side}; }

    double perimeter() const;
    double area() const;
    /// Radius of the smallest origin-centred disk containing the region.
    double circumradius() const;
    bool contains(Point x, double scale = 1.0) const;
    void validate() const;
};

std::string to_string(RegionShape shape);

/// Angular truncation for a region scaled by L.
struct TruncationPolicy {
    bool automatic = true;
    int l_max = 3;
    int m_max = 0;  ///< used when !automatic
    double margin_lengths = 4.0;
    int extra = 10;

    /// ceil(B0 (L r + margin / sqrt(B0))^2 / 2) + extra, with r the circumradius.
    int m_max_for(double B0, const RegionSpec& region, double L) const;
    LandauBasisSpec frame_for(double B0, const RegionSpec& region, double L) const;
};

struct AssemblyTolerances {
    double max_asymmetry = 1e-6;
    double overlap_slack = 1e-6;
};

/// Diagonal H0 with entries B0(2l+1).
HermitianMatrix assemble_h0(const LandauBasisSpec& spec);

/// Gram matrix of the frame under the grid; the identity when the grid is adequate.
HermitianMatrix assemble_gram(const LandauBasisSpec& spec, const QuadratureGrid& grid);

/// <phi_i | 2 A.(-i grad - A0) + |A|^2 + V | phi_j>. Throws AccuracyError when the raw matrix
/// is further than tol.max_asymmetry from Hermitian.
HermitianMatrix assemble_heps(const LandauBasisSpec& spec, const FieldFamily& field, const PotentialFamily& potential,
                              const QuadratureGrid& grid, const AssemblyTolerances& tol = {});

/// Only the first-order part 2 A.(-i grad - A0), which is linear in the field.
HermitianMatrix assemble_heps_linear(const LandauBasisSpec& spec, const FieldFamily& field,
                                     const QuadratureGrid& grid, const AssemblyTolerances& tol = {});

HermitianMatrix assemble_full_h(const LandauBasisSpec& spec, const FieldFamily& field,
                                const PotentialFamily& potential, const QuadratureGrid& grid,
                                const AssemblyTolerances& tol = {});

/// <phi_i | 1_{L Lambda} | phi_j>. Eigenvalues are checked against [-slack, 1 + slack]
/// (AccuracyError otherwise) and the matrix is returned unclipped.
HermitianMatrix assemble_overlap(const LandauBasisSpec& spec, const RegionSpec& region, double L,
                                 const QuadratureGrid& grid, const AssemblyTolerances& tol = {});

namespace detail {

/// Radial factors R_{l,m}(r_k) for levels 0..l_top, laid out [level][m][k].
struct RadialTable {
    int l_top = 0;
    int m_max = 0;
    int n = 0;
    std::vector<double> values;

    RadialTable(double B0, int l_top, int m_max, const std::vector<double>& r);
    const double* row(int l, int m) const { return values.data() + (static_cast<std::size_t>(l) * m_max + m) * n; }
};

/// fhat(r_k, d) = sum_j (2 pi / N) f(r_k, theta_j) exp(i d theta_j) for |d| <= d_max,
/// laid out [d + d_max][k].
std::vector<cplx> angular_coefficients(const std::vector<cplx>& samples, const QuadratureGrid& grid, int d_max);

}  // namespace detail

}  // namespace landau_ee
