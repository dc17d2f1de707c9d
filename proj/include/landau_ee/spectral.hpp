#pragma once

#include <vector>

#include "landau_ee/assembly.hpp"
#include "landau_ee/landau.hpp"
#include "landau_ee/types.hpp"

namespace landau_ee {

struct EigenDecomposition {
    RVector eigenvalues;  ///< ascending
    CMatrix eigenvectors;

    static EigenDecomposition of(const CMatrix& h);
    /// max |HV - V Lambda| and max |V*V - I|.
    double residual(const CMatrix& h) const;
    double orthonormality_error() const;
};

/// Closed energy window [a, b].
struct Interval {
    double a = 0.0;
    double b = 0.0;
    bool contains(double e) const { return e >= a && e <= b; }
};

/// max(1e-8 B0, 1e-12 |H|_2)
double default_endpoint_tolerance(double B0, const CMatrix& h);

/// Orthogonal projection together with an orthonormal frame of its range.
struct Projection {
    CMatrix p;
    CMatrix frame;
    int rank = 0;
};

/// 1_[a,b](H) from the eigendecomposition. Throws SingularityError (listing the nearest
/// eigenvalues) when an endpoint lies within gap_tol of the spectrum.
Projection fermi_projection(const EigenDecomposition& eig, Interval window, double gap_tol);
Projection fermi_projection(const CMatrix& h, Interval window, double gap_tol);

/// 1_[a,b](H0) as a sum of level blocks; the frame is made of the basis vectors themselves.
Projection level_projection(const LandauBasisSpec& spec, Interval window);

/// Circle centre + radius e^{i theta}, trapezoid with nodes at theta_k = 2 pi (k + 1/2) / n.
struct ContourSpec {
    double center = 0.0;
    double radius = 1.0;
    int n_nodes = 64;

    /// The circle crossing the real axis at a and b.
    static ContourSpec through(Interval window, int n_nodes = 64);
    cplx node(int k) const;
    /// Weight w_k with -(1/2 pi i) int f dzeta ~ sum_k w_k f(zeta_k).
    cplx weight(int k) const;
    void validate() const;
};

/// Rejected when the LU reciprocal condition estimate drops below this.
inline constexpr double kMinContourRcond = 1e-12;

/// -(1/2 pi i) oint (H - zeta)^{-1} dzeta by the trapezoid rule; nodes are summed in
/// fixed-size chunks merged in order, so the result does not depend on the thread count.
CMatrix riesz_projection(const CMatrix& h, const ContourSpec& contour);

struct ResolventResidual {
    double absolute = 0.0;
    double relative = 0.0;  ///< absolute / |(H - zeta)^{-1}|_F
};

/// Frobenius gap between (H - zeta)^{-1} and the order-n expansion in H_eps around H0.
ResolventResidual resolvent_expansion_residual(const CMatrix& h0, const CMatrix& heps, cplx zeta, int n,
                                               double gap_tol = 1e-12);

struct ContourIdentity {
    int k = 0;
    CMatrix lhs;
    CMatrix rhs;
    double frobenius_diff = 0.0;
    double relative_diff = 0.0;
};

/// For k = 0..k_max, compares
///   -(1/2 pi i) oint (H0 - zeta)^{-1} (H_eps (H0 - zeta)^{-1})^k dzeta     (trapezoid, n_nodes)
/// with sum_{m=0}^{k} (T_l H_eps)^m P_l (H_eps T_l)^{k-m} on the circle of radius B0 about B0(2l+1).
std::vector<ContourIdentity> contour_term_identities(const LandauBasisSpec& spec, const CMatrix& heps, int l,
                                                     int k_max, int n_nodes = 96);
ContourIdentity contour_term_identity(const LandauBasisSpec& spec, const CMatrix& heps, int l, int k,
                                      int n_nodes = 96);
ContourIdentity contour_term_identity(const LandauBasisSpec& spec, const FieldFamily& field,
                                      const PotentialFamily& potential, int l, int k, const QuadratureGrid& grid,
                                      int n_nodes = 96);

/// The same contour term as the exact residue at B0(2l+1) of the Laurent expansion of
/// (H0 - zeta)^{-1} (H_eps (H0 - zeta)^{-1})^k. Differs from the closed form above by the
/// higher-order pole contributions once k >= 2 and P_l H_eps P_l != 0.
CMatrix contour_term_residue(const LandauBasisSpec& spec, const CMatrix& heps, int l, int k);

/// Relative Frobenius gap, on the block of levels <= watch_level, between the order-k contour term
/// computed in the frame with levels <= l_small and in the full frame of heps_ref (same grid).
double contour_truncation_gap(const LandauBasisSpec& spec_ref, const CMatrix& heps_ref, int l_small, int l, int k,
                              int watch_level, int n_nodes = 96);

/// |H_eps M_{N,zeta}|_p for each frame (each assembled on its default grid).
std::vector<double> heps_resolvent_schatten(const std::vector<LandauBasisSpec>& frames, const FieldFamily& field,
                                            const PotentialFamily& potential, cplx zeta, double p);

}  // namespace landau_ee
