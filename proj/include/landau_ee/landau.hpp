#pragma once

#include <set>
#include <vector>

#include "landau_ee/quadrature.hpp"
#include "landau_ee/types.hpp"

namespace landau_ee {

/// (l, m): Landau level and guiding-centre index.
struct BasisIndex {
    int l = 0;
    int m = 0;
    friend bool operator==(BasisIndex, BasisIndex) = default;
};

/// Truncated symmetric-gauge Landau frame: levels 0..l_max, guiding centres 0..m_max-1.
/// Basis vectors are ordered lexicographically in (l, m).
class LandauBasisSpec {
public:
    LandauBasisSpec(double B0, int l_max, int m_max);

    double B0() const { return B0_; }
    int l_max() const { return l_max_; }
    int m_max() const { return m_max_; }
    int dim() const { return (l_max_ + 1) * m_max_; }
    double magnetic_length() const;

    bool contains(BasisIndex idx) const;
    int index(BasisIndex idx) const;
    BasisIndex at(int i) const { return {i / m_max_, i % m_max_}; }
    double level_energy(int l) const { return B0_ * (2.0 * l + 1.0); }

    /// Radius beyond which every orbital of the frame (and one level above it) is negligible.
    double outer_orbital_radius() const;

    friend bool operator==(const LandauBasisSpec&, const LandauBasisSpec&) = default;

private:
    double B0_;
    int l_max_;
    int m_max_;
};

/// I = N \ excluded, for a finite excluded set.
class CofiniteLevelSet {
public:
    CofiniteLevelSet() = default;
    explicit CofiniteLevelSet(std::set<int> excluded);
    static CofiniteLevelSet all() { return {}; }
    static CofiniteLevelSet all_but(int l) { return CofiniteLevelSet({l}); }

    bool contains(int l) const { return l >= 0 && !excluded_.contains(l); }
    /// Largest excluded level, or -1 when nothing is excluded.
    int max_excluded() const { return excluded_.empty() ? -1 : *excluded_.rbegin(); }
    const std::set<int>& excluded() const { return excluded_; }

private:
    std::set<int> excluded_;
};

/// Complex energy at which resolvent-type operators are evaluated.
struct SpectralShift {
    cplx zeta;
};

// ---- orbitals -----------------------------------------------------------

/// Real radial factor R_{l,m}(r), including the sign that makes ladder coefficients positive.
/// The orbital is phi_{l,m}(r, theta) = (-i)^l R_{l,m}(r) exp(-i (m - l) theta).
double orbital_radial(double B0, int l, int m, double r);

/// (-i)^l
cplx orbital_phase(int l);

/// Normalised eigenfunction phi_{l,m}; no truncation check.
cplx landau_orbital(double B0, int l, int m, Point x);

/// phi_{l,m} for an index of the frame. Throws DomainError if the index is out of range.
cplx basis_eval(const LandauBasisSpec& spec, BasisIndex idx, Point x);

// ---- explicit kernels ---------------------------------------------------

/// Integral kernel of the Landau-level projection P_l.
cplx pl_kernel(double B0, int l, Point x, Point y);

/// Kernel of Q_t = sum_l t^l P_l, 0 <= t < 1.
cplx qt_kernel(double B0, double t, Point x, Point y);

/// (-i grad_x - (B0/2) J x) q_t(x, y).
CVec2 qt_covariant_gradient(double B0, double t, Point x, Point y);

// ---- ladder operators ---------------------------------------------------

enum class Ladder { raise, lower };

struct LadderResult {
    CVector v;
    /// Set when raising pushed weight out of level l_max (that weight is dropped).
    bool truncated = false;
};

/// a_+ e_{l,m} = sqrt(2l+2) e_{l+1,m};  a_- e_{l,m} = sqrt(2l) e_{l-1,m}.
LadderResult ladder_apply(const LandauBasisSpec& spec, Ladder dir, const CVector& v);

/// Dense matrix of a_+ or a_- in the frame (raising out of l_max is dropped).
CMatrix ladder_matrix(const LandauBasisSpec& spec, Ladder dir);

// ---- resolvent-like diagonal operators ----------------------------------

/// Diagonal operator, constant on each Landau level of the frame.
struct LevelDiagonal {
    std::vector<cplx> per_level;
    int m_max = 0;

    CVector expand() const;
    CMatrix dense() const;
    cplx at_level(int l) const { return per_level.at(l); }
};

inline double default_gap_tolerance(double B0) { return 1e-6 * B0; }

/// M_{I,zeta} = sum_{l in I} P_l / (B0(2l+1) - zeta), restricted to the frame.
/// Throws SingularityError if zeta is within gap_tol of some B0(2l+1), l in I.
LevelDiagonal m_resolvent_diag(const LandauBasisSpec& spec, const CofiniteLevelSet& levels, SpectralShift zeta,
                               double gap_tol);
LevelDiagonal m_resolvent_diag(const LandauBasisSpec& spec, const CofiniteLevelSet& levels, SpectralShift zeta);

/// T_l = M_{N \ {l}, B0(2l+1)} = sum_{k != l} P_k / (2 B0 (k - l)).
LevelDiagonal t_operator(const LandauBasisSpec& spec, int l);

/// Cutoff level used by the t-integral representation: smallest admissible value plus 2.
int integral_cutoff_level(double B0, const CofiniteLevelSet& levels, cplx zeta);

struct KernelIntegral {
    cplx value;
    double error_estimate = 0.0;
    int cutoff_level = 0;
};

/// Kernel of M_{I,zeta} at x != y from
///   B0 M = int_0^1 t^{-zeta/B0} (Q_{t^2} - sum_{l<=l0} t^{2l} P_l) dt + sum_{l in I, l<=l0} P_l / (2l+1-zeta/B0).
KernelIntegral m_kernel_via_integral(double B0, const CofiniteLevelSet& levels, cplx zeta, Point x, Point y,
                                     const AdaptiveQuadSpec& quad = {});

/// Phase picked up by every Landau kernel under a common shift v of both arguments:
/// k(x+v, y+v) = k(x, y) * translation_phase(B0, v, x, y).
cplx translation_phase(double B0, Point v, Point x, Point y);

}  // namespace landau_ee
