#pragma once

// Serial, brute-force versions of the parallel kernels. They evaluate every orbital
// pointwise and share no factorisation with the fast paths; tests and benchmarks
// compare against them on small frames.

#include "landau_ee/assembly.hpp"
#include "landau_ee/spectral.hpp"

namespace landau_ee::reference {

/// Pointwise quadrature of <phi_i | W + 2 A.Pi | phi_j> on the polar grid, no hermitization.
CMatrix heps_raw(const LandauBasisSpec& spec, const FieldFamily& field, const PotentialFamily& potential,
                 const QuadratureGrid& grid);

/// Pointwise quadrature of <phi_i | phi_j> on the polar grid.
CMatrix gram(const LandauBasisSpec& spec, const QuadratureGrid& grid);

/// Overlap by pointwise quadrature: polar grid on [0, L r0] for disks, tensor Gauss-Legendre
/// with n_1d nodes per side for squares.
CMatrix overlap(const LandauBasisSpec& spec, const RegionSpec& region, double L, const QuadratureGrid& grid,
                int n_1d = 200);

/// Trapezoid contour sum node by node with explicit inverses.
CMatrix riesz_projection(const CMatrix& h, const ContourSpec& contour);

/// Left-hand side of the contour identity with dense resolvents of H0 at every node.
CMatrix contour_lhs(const LandauBasisSpec& spec, const CMatrix& heps, int l, int k, int n_nodes);

}  // namespace landau_ee::reference
