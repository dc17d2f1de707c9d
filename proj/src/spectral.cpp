#include "landau_ee/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau_ee/parallel.hpp"
#include "landau_ee/schatten.hpp"

namespace landau_ee {

// ---- eigendecomposition -------------------------------------------------

EigenDecomposition EigenDecomposition::of(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw AccuracyError("eigendecomposition did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

double EigenDecomposition::residual(const CMatrix& h) const {
    if (h.rows() == 0) return 0.0;
    return (h * eigenvectors - eigenvectors * eigenvalues.cast<cplx>().asDiagonal()).cwiseAbs().maxCoeff();
}

double EigenDecomposition::orthonormality_error() const {
    if (eigenvectors.rows() == 0) return 0.0;
    const auto n = eigenvectors.cols();
    return (eigenvectors.adjoint() * eigenvectors - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double default_endpoint_tolerance(double B0, const CMatrix& h) {
    const double hn = h.rows() == 0 ? 0.0 : singular_values(h)(0);
    return std::max(1e-8 * B0, 1e-12 * hn);
}

// ---- projections --------------------------------------------------------

namespace {

void check_endpoint(const RVector& ev, double e, double gap_tol, const char* name) {
    if (ev.size() == 0) return;
    const auto it = std::lower_bound(ev.data(), ev.data() + ev.size(), e);
    const Eigen::Index hi = it - ev.data();
    double dist = std::numeric_limits<double>::infinity();
    if (hi < ev.size()) dist = std::min(dist, ev(hi) - e);
    if (hi > 0) dist = std::min(dist, e - ev(hi - 1));
    if (dist > gap_tol) return;
    std::ostringstream os;
    os.precision(12);
    os << "interval endpoint " << name << " = " << e << " lies within " << gap_tol << " of the spectrum; nearest eigenvalues:";
    for (Eigen::Index i = std::max<Eigen::Index>(0, hi - 2); i < std::min<Eigen::Index>(ev.size(), hi + 2); ++i)
        os << ' ' << ev(i);
    throw SingularityError(os.str());
}

}  // namespace

Projection fermi_projection(const EigenDecomposition& eig, Interval window, double gap_tol) {
    if (!(window.a < window.b)) throw DomainError("fermi_projection: need a < b");
    check_endpoint(eig.eigenvalues, window.a, gap_tol, "a");
    check_endpoint(eig.eigenvalues, window.b, gap_tol, "b");
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (window.contains(eig.eigenvalues(i))) cols.push_back(i);
    }
    Projection out;
    out.rank = static_cast<int>(cols.size());
    out.frame = eig.eigenvectors(Eigen::all, cols);
    out.p = out.frame * out.frame.adjoint();
    return out;
}

Projection fermi_projection(const CMatrix& h, Interval window, double gap_tol) {
    return fermi_projection(EigenDecomposition::of(h), window, gap_tol);
}

Projection level_projection(const LandauBasisSpec& spec, Interval window) {
    if (!(window.a < window.b)) throw DomainError("level_projection: need a < b");
    RVector levels(spec.l_max() + 1);
    for (int l = 0; l <= spec.l_max(); ++l) levels(l) = spec.level_energy(l);
    const double tol = 1e-8 * spec.B0();
    check_endpoint(levels, window.a, tol, "a");
    check_endpoint(levels, window.b, tol, "b");
    std::vector<Eigen::Index> cols;
    for (int i = 0; i < spec.dim(); ++i) {
        if (window.contains(spec.level_energy(spec.at(i).l))) cols.push_back(i);
    }
    Projection out;
    out.rank = static_cast<int>(cols.size());
    out.frame = CMatrix::Identity(spec.dim(), spec.dim())(Eigen::all, cols);
    out.p = out.frame * out.frame.adjoint();
    return out;
}

// ---- contour integrals --------------------------------------------------

ContourSpec ContourSpec::through(Interval window, int n_nodes) {
    return {0.5 * (window.a + window.b), 0.5 * (window.b - window.a), n_nodes};
}

cplx ContourSpec::node(int k) const {
    return center + radius * std::polar(1.0, 2.0 * kPi * (k + 0.5) / n_nodes);
}

cplx ContourSpec::weight(int k) const {
    // dzeta = i r e^{i theta} dtheta; -(1/2 pi i) * i r e^{i theta} * 2 pi / n
    return -(radius / n_nodes) * std::polar(1.0, 2.0 * kPi * (k + 0.5) / n_nodes);
}

void ContourSpec::validate() const {
    if (!(radius > 0.0)) throw DomainError("contour: radius must be positive");
    if (n_nodes < 2 || n_nodes % 2) throw DomainError("contour: node count must be even and >= 2");
}

namespace {

constexpr int kNodeChunk = 8;

}  // namespace

CMatrix riesz_projection(const CMatrix& h, const ContourSpec& contour) {
    contour.validate();
    const Eigen::Index n = h.rows();
    const int nchunks = (contour.n_nodes + kNodeChunk - 1) / kNodeChunk;
    std::vector<CMatrix> partial(nchunks, CMatrix::Zero(n, n));
    ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < nchunks; ++c) {
        slot.run([&] {
            for (int k = c * kNodeChunk; k < std::min(contour.n_nodes, (c + 1) * kNodeChunk); ++k) {
                const cplx z = contour.node(k);
                CMatrix shifted = h;
                shifted.diagonal().array() -= z;
                Eigen::PartialPivLU<CMatrix> lu(shifted);
                const double rc = lu.rcond();
                if (!(rc >= kMinContourRcond)) {
                    std::ostringstream os;
                    os << "riesz_projection: contour node " << z << " too close to the spectrum (rcond " << rc << ")";
                    throw SingularityError(os.str());
                }
                partial[c].noalias() += contour.weight(k) * lu.inverse();
            }
        });
    }
    slot.rethrow();
    CMatrix out = CMatrix::Zero(n, n);
    for (const auto& p : partial) out += p;
    return out;
}

namespace {

double spectral_distance(const CMatrix& h, cplx zeta) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return (es.eigenvalues().cast<cplx>().array() - zeta).abs().minCoeff();
}

}  // namespace

ResolventResidual resolvent_expansion_residual(const CMatrix& h0, const CMatrix& heps, cplx zeta, int n,
                                               double gap_tol) {
    if (n < 1) throw DomainError("resolvent_expansion_residual: n must be positive");
    if (h0.rows() != heps.rows()) throw DomainError("resolvent_expansion_residual: dimension mismatch");
    const CMatrix h = h0 + heps;
    for (const CMatrix* m : {&h0, &h}) {
        const double d = spectral_distance(*m, zeta);
        if (d <= gap_tol) {
            std::ostringstream os;
            os << "resolvent_expansion_residual: zeta " << zeta << " within " << d << " of the spectrum";
            throw SingularityError(os.str());
        }
    }
    const Eigen::Index dim = h.rows();
    const CMatrix id = CMatrix::Identity(dim, dim);
    const CMatrix r0 = (h0 - zeta * id).partialPivLu().inverse();
    const CMatrix r = (h - zeta * id).partialPivLu().inverse();
    const CMatrix k = heps * r0;
    CMatrix sum = CMatrix::Zero(dim, dim);
    CMatrix term = r0;
    for (int j = 0; j < 2 * n; ++j) {
        sum += term;
        term = -(term * k).eval();
    }
    CMatrix left = id, right = id;
    const CMatrix lk = r0 * heps;
    for (int j = 0; j < n; ++j) {
        left = (left * lk).eval();
        right = (right * k).eval();
    }
    sum.noalias() += left * r * right;
    ResolventResidual out;
    out.absolute = (r - sum).norm();
    const double rn = r.norm();
    out.relative = rn > 0.0 ? out.absolute / rn : out.absolute;
    return out;
}

std::vector<ContourIdentity> contour_term_identities(const LandauBasisSpec& spec, const CMatrix& heps, int l,
                                                     int k_max, int n_nodes) {
    if (l < 0 || l > spec.l_max()) throw DomainError("contour_term_identity: level outside the frame");
    if (k_max < 0) throw DomainError("contour_term_identity: order must be non-negative");
    if (heps.rows() != spec.dim() || heps.cols() != spec.dim())
        throw DomainError("contour_term_identity: perturbation does not match the frame");
    const ContourSpec contour{spec.level_energy(l), spec.B0(), n_nodes};
    contour.validate();
    const Eigen::Index dim = spec.dim();

    // Left-hand side: trapezoid sum of D (H D)^j with D the diagonal resolvent of H0.
    const int nchunks = (n_nodes + kNodeChunk - 1) / kNodeChunk;
    std::vector<std::vector<CMatrix>> partial(nchunks,
                                              std::vector<CMatrix>(k_max + 1, CMatrix::Zero(dim, dim)));
    ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < nchunks; ++c) {
        slot.run([&] {
            for (int q = c * kNodeChunk; q < std::min(n_nodes, (c + 1) * kNodeChunk); ++q) {
                const CVector d =
                    m_resolvent_diag(spec, CofiniteLevelSet::all(), {contour.node(q)}).expand();
                const cplx w = contour.weight(q);
                CMatrix z = d.asDiagonal();
                partial[c][0] += w * z;
                for (int j = 1; j <= k_max; ++j) {
                    z = ((z * heps) * d.asDiagonal()).eval();
                    partial[c][j] += w * z;
                }
            }
        });
    }
    slot.rethrow();

    // Right-hand side: sum_m (T H)^m P (H T)^{k-m}.
    const CVector t = t_operator(spec, l).expand();
    CVector pmask = CVector::Zero(dim);
    pmask.segment(static_cast<Eigen::Index>(l) * spec.m_max(), spec.m_max()).setOnes();
    std::vector<CMatrix> left(k_max + 1), right(k_max + 1);
    left[0] = pmask.asDiagonal();
    right[0] = left[0];
    for (int j = 1; j <= k_max; ++j) {
        left[j] = t.asDiagonal() * (heps * left[j - 1]);
        right[j] = (right[j - 1] * heps) * t.asDiagonal();
    }

    std::vector<ContourIdentity> out(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        ContourIdentity& ci = out[k];
        ci.k = k;
        ci.lhs = CMatrix::Zero(dim, dim);
        for (int c = 0; c < nchunks; ++c) ci.lhs += partial[c][k];
        ci.rhs = CMatrix::Zero(dim, dim);
        for (int m = 0; m <= k; ++m) ci.rhs.noalias() += left[m] * right[k - m];
        ci.frobenius_diff = (ci.lhs - ci.rhs).norm();
        const double rn = ci.rhs.norm();
        ci.relative_diff = rn > 0.0 ? ci.frobenius_diff / rn : ci.frobenius_diff;
    }
    return out;
}

CMatrix contour_term_residue(const LandauBasisSpec& spec, const CMatrix& heps, int l, int k) {
    if (l < 0 || l > spec.l_max()) throw DomainError("contour_term_residue: level outside the frame");
    if (k < 0) throw DomainError("contour_term_residue: order must be non-negative");
    if (heps.rows() != spec.dim() || heps.cols() != spec.dim())
        throw DomainError("contour_term_residue: perturbation does not match the frame");
    const Eigen::Index dim = spec.dim();
    // (H0 - zeta)^{-1} = sum_{n >= -1} (zeta - E_l)^n C_n with C_{-1} = -P_l, C_n = T_l^{n+1}.
    const CVector t = t_operator(spec, l).expand();
    std::vector<CVector> coef(k + 2);  // coef[n + 1] = C_n
    coef[0] = CVector::Zero(dim);
    coef[0].segment(static_cast<Eigen::Index>(l) * spec.m_max(), spec.m_max()).setConstant(-1.0);
    coef[1] = t;
    for (int n = 1; n <= k; ++n) coef[n + 1] = coef[n].cwiseProduct(t);

    // g[d + j + 1] holds the (zeta - E_l)^d coefficient of D (H D)^j, degrees -(j+1) .. k - j - 1.
    std::vector<CMatrix> g;
    for (int n = -1; n <= k - 1; ++n) g.push_back(CMatrix(coef[n + 1].asDiagonal()));
    for (int j = 1; j <= k; ++j) {
        const int lo = -(j + 1), hi = k - j - 1;
        std::vector<CMatrix> next(hi - lo + 1, CMatrix::Zero(dim, dim));
        const int prev_lo = -j;
        for (std::size_t a = 0; a < g.size(); ++a) {
            const int da = prev_lo + static_cast<int>(a);
            const CMatrix gh = g[a] * heps;
            for (int n = -1; da + n <= hi; ++n) next[da + n - lo] += gh * coef[n + 1].asDiagonal();
        }
        g = std::move(next);
    }
    // -(1/2 pi i) oint = minus the residue, the degree -1 coefficient.
    return -g[k];
}

ContourIdentity contour_term_identity(const LandauBasisSpec& spec, const CMatrix& heps, int l, int k, int n_nodes) {
    return contour_term_identities(spec, heps, l, k, n_nodes).back();
}

ContourIdentity contour_term_identity(const LandauBasisSpec& spec, const FieldFamily& field,
                                      const PotentialFamily& potential, int l, int k, const QuadratureGrid& grid,
                                      int n_nodes) {
    const HermitianMatrix heps = assemble_heps(spec, field, potential, grid);
    return contour_term_identity(spec, heps.m, l, k, n_nodes);
}

double contour_truncation_gap(const LandauBasisSpec& spec_ref, const CMatrix& heps_ref, int l_small, int l, int k,
                              int watch_level, int n_nodes) {
    if (l_small > spec_ref.l_max() || watch_level > l_small)
        throw DomainError("contour_truncation_gap: need watch_level <= l_small <= reference l_max");
    const int mm = spec_ref.m_max();
    const LandauBasisSpec small(spec_ref.B0(), l_small, mm);
    const CMatrix heps_small = heps_ref.topLeftCorner(small.dim(), small.dim());
    const CMatrix a = contour_term_identity(small, heps_small, l, k, n_nodes).lhs;
    const CMatrix b = contour_term_identity(spec_ref, heps_ref, l, k, n_nodes).lhs;
    const Eigen::Index w = static_cast<Eigen::Index>(watch_level + 1) * mm;
    const double bn = b.topLeftCorner(w, w).norm();
    const double diff = (a.topLeftCorner(w, w) - b.topLeftCorner(w, w)).norm();
    return bn > 0.0 ? diff / bn : diff;
}

std::vector<double> heps_resolvent_schatten(const std::vector<LandauBasisSpec>& frames, const FieldFamily& field,
                                            const PotentialFamily& potential, cplx zeta, double p) {
    std::vector<double> out;
    out.reserve(frames.size());
    for (const auto& spec : frames) {
        const HermitianMatrix heps = assemble_heps(spec, field, potential, default_grid(spec));
        const CVector m = m_resolvent_diag(spec, CofiniteLevelSet::all(), {zeta}).expand();
        out.push_back(schatten_pnorm(heps.m * m.asDiagonal(), p).value);
    }
    return out;
}

}  // namespace landau_ee
