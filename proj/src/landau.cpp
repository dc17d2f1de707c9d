#include "landau_ee/landau.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau_ee/special.hpp"

namespace landau_ee {

LandauBasisSpec::LandauBasisSpec(double B0, int l_max, int m_max) : B0_(B0), l_max_(l_max), m_max_(m_max) {
    if (!(B0 > 0.0) || !std::isfinite(B0)) throw DomainError("LandauBasisSpec: B0 must be positive");
    if (l_max < 0) throw DomainError("LandauBasisSpec: l_max must be >= 0");
    if (m_max < 1) throw DomainError("LandauBasisSpec: m_max must be >= 1");
}

double LandauBasisSpec::magnetic_length() const { return 1.0 / std::sqrt(B0_); }

bool LandauBasisSpec::contains(BasisIndex idx) const {
    return idx.l >= 0 && idx.l <= l_max_ && idx.m >= 0 && idx.m < m_max_;
}

int LandauBasisSpec::index(BasisIndex idx) const {
    if (!contains(idx)) {
        std::ostringstream os;
        os << "basis index (l=" << idx.l << ", m=" << idx.m << ") outside frame l_max=" << l_max_
           << ", m_max=" << m_max_;
        throw DomainError(os.str());
    }
    return idx.l * m_max_ + idx.m;
}

double LandauBasisSpec::outer_orbital_radius() const {
    return (std::sqrt(static_cast<double>(m_max_)) + std::sqrt(l_max_ + 2.0)) * std::sqrt(2.0 / B0_);
}

CofiniteLevelSet::CofiniteLevelSet(std::set<int> excluded) : excluded_(std::move(excluded)) {
    for (int l : excluded_) {
        if (l < 0) throw DomainError("CofiniteLevelSet: negative level excluded");
    }
}

// ---- orbitals -----------------------------------------------------------

double orbital_radial(double B0, int l, int m, double r) {
    if (l < 0 || m < 0) return 0.0;
    const int lo = std::min(l, m);
    const int hi = std::max(l, m);
    const int q = hi - lo;
    const double rho = 0.5 * B0 * r * r;
    double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0) + std::log(B0 / (2.0 * kPi))) - 0.5 * rho;
    if (q > 0) {
        if (rho == 0.0) return 0.0;
        log_mag += 0.5 * q * std::log(rho);
    }
    const double sign = (m >= l || (l - m) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(log_mag) * assoc_laguerre(lo, q, rho);
}

cplx orbital_phase(int l) {
    static const cplx table[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    return table[((l % 4) + 4) % 4];
}

cplx landau_orbital(double B0, int l, int m, Point x) {
    const double r = std::sqrt(norm2(x));
    const double radial = orbital_radial(B0, l, m, r);
    if (radial == 0.0) return 0.0;
    const double theta = std::atan2(x.y, x.x);
    return orbital_phase(l) * radial * std::polar(1.0, -(m - l) * theta);
}

cplx basis_eval(const LandauBasisSpec& spec, BasisIndex idx, Point x) {
    if (!spec.contains(idx)) {
        (void)spec.index(idx);  // throws with a descriptive message
    }
    return landau_orbital(spec.B0(), idx.l, idx.m, x);
}

// ---- kernels ------------------------------------------------------------

cplx pl_kernel(double B0, int l, Point x, Point y) {
    const double d2 = norm2(x - y);
    const cplx e = std::exp(cplx(-0.25 * B0 * d2, 0.5 * B0 * symplectic(x, y)));
    return B0 / (2.0 * kPi) * e * laguerre_eval(l, 0.5 * B0 * d2);
}

cplx qt_kernel(double B0, double t, Point x, Point y) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("qt_kernel: t must lie in [0,1)");
    const double d2 = norm2(x - y);
    const cplx e = std::exp(cplx(-B0 * (1.0 + t) / (4.0 * (1.0 - t)) * d2, 0.5 * B0 * symplectic(x, y)));
    return B0 / (2.0 * kPi * (1.0 - t)) * e;
}

CVec2 qt_covariant_gradient(double B0, double t, Point x, Point y) {
    const cplx q = qt_kernel(B0, t, x, y);
    const Point d = x - y;
    const Point jd = apply_j(d);
    const cplx c(0.0, B0 * (1.0 + t) / (2.0 * (1.0 - t)));
    return {(c * d.x - 0.5 * B0 * jd.x) * q, (c * d.y - 0.5 * B0 * jd.y) * q};
}

cplx translation_phase(double B0, Point v, Point x, Point y) {
    return std::polar(1.0, 0.5 * B0 * symplectic(v, y - x));
}

// ---- ladder -------------------------------------------------------------

LadderResult ladder_apply(const LandauBasisSpec& spec, Ladder dir, const CVector& v) {
    if (v.size() != spec.dim()) throw DomainError("ladder_apply: vector dimension does not match frame");
    LadderResult out{CVector::Zero(spec.dim()), false};
    const int mm = spec.m_max();
    for (int l = 0; l <= spec.l_max(); ++l) {
        for (int m = 0; m < mm; ++m) {
            const cplx c = v(l * mm + m);
            if (dir == Ladder::raise) {
                if (l == spec.l_max()) {
                    if (c != 0.0) out.truncated = true;
                    continue;
                }
                out.v((l + 1) * mm + m) += std::sqrt(2.0 * l + 2.0) * c;
            } else if (l > 0) {
                out.v((l - 1) * mm + m) += std::sqrt(2.0 * l) * c;
            }
        }
    }
    return out;
}

CMatrix ladder_matrix(const LandauBasisSpec& spec, Ladder dir) {
    CMatrix a = CMatrix::Zero(spec.dim(), spec.dim());
    const int mm = spec.m_max();
    for (int l = 0; l <= spec.l_max(); ++l) {
        for (int m = 0; m < mm; ++m) {
            if (dir == Ladder::raise && l < spec.l_max()) a((l + 1) * mm + m, l * mm + m) = std::sqrt(2.0 * l + 2.0);
            if (dir == Ladder::lower && l > 0) a((l - 1) * mm + m, l * mm + m) = std::sqrt(2.0 * l);
        }
    }
    return a;
}

// ---- diagonal resolvents ------------------------------------------------

CVector LevelDiagonal::expand() const {
    CVector d(static_cast<Eigen::Index>(per_level.size()) * m_max);
    for (std::size_t l = 0; l < per_level.size(); ++l) d.segment(l * m_max, m_max).setConstant(per_level[l]);
    return d;
}

CMatrix LevelDiagonal::dense() const { return expand().asDiagonal(); }

namespace {

void check_gap(double B0, const CofiniteLevelSet& levels, cplx zeta, double gap_tol) {
    // Only the level nearest to Re(zeta) can violate the gap.
    const double lreal = 0.5 * (zeta.real() / B0 - 1.0);
    for (int l : {static_cast<int>(std::floor(lreal)), static_cast<int>(std::ceil(lreal))}) {
        if (l < 0 || !levels.contains(l)) continue;
        const double dist = std::abs(B0 * (2.0 * l + 1.0) - zeta);
        if (dist <= gap_tol) {
            std::ostringstream os;
            os << "spectral shift " << zeta << " within gap tolerance " << gap_tol << " of Landau level l=" << l
               << " (energy " << B0 * (2.0 * l + 1.0) << ")";
            throw SingularityError(os.str());
        }
    }
}

}  // namespace

LevelDiagonal m_resolvent_diag(const LandauBasisSpec& spec, const CofiniteLevelSet& levels, SpectralShift zeta,
                               double gap_tol) {
    check_gap(spec.B0(), levels, zeta.zeta, gap_tol);
    LevelDiagonal out;
    out.m_max = spec.m_max();
    out.per_level.resize(spec.l_max() + 1);
    for (int l = 0; l <= spec.l_max(); ++l) {
        out.per_level[l] = levels.contains(l) ? 1.0 / (spec.level_energy(l) - zeta.zeta) : cplx(0.0);
    }
    return out;
}

LevelDiagonal m_resolvent_diag(const LandauBasisSpec& spec, const CofiniteLevelSet& levels, SpectralShift zeta) {
    return m_resolvent_diag(spec, levels, zeta, default_gap_tolerance(spec.B0()));
}

LevelDiagonal t_operator(const LandauBasisSpec& spec, int l) {
    return m_resolvent_diag(spec, CofiniteLevelSet::all_but(l), {cplx(spec.level_energy(l), 0.0)});
}

int integral_cutoff_level(double B0, const CofiniteLevelSet& levels, cplx zeta) {
    const double need = std::max(static_cast<double>(levels.max_excluded()), ((zeta + B0) / (2.0 * B0)).real());
    int l0 = std::max(0, static_cast<int>(std::ceil(need)));
    while ((2.0 * l0 - 1.0) * B0 <= zeta.real()) ++l0;
    return l0 + 2;
}

KernelIntegral m_kernel_via_integral(double B0, const CofiniteLevelSet& levels, cplx zeta, Point x, Point y,
                                     const AdaptiveQuadSpec& quad) {
    if (x == y) throw SingularityError("m_kernel_via_integral: kernel is singular on the diagonal x = y");
    check_gap(B0, levels, zeta, default_gap_tolerance(B0));
    const int l0 = integral_cutoff_level(B0, levels, zeta);

    // p_l(x,y) for l <= l0 + kTail; the tail serves the small-t branch.
    constexpr int kTail = 48;
    std::vector<cplx> pl(l0 + kTail + 1);
    {
        const double d2 = norm2(x - y);
        const double s = 0.5 * B0 * d2;
        const cplx base = B0 / (2.0 * kPi) * std::exp(cplx(-0.25 * B0 * d2, 0.5 * B0 * symplectic(x, y)));
        double prev = 1.0, cur = 1.0 - s;
        for (int l = 0; l < static_cast<int>(pl.size()); ++l) {
            double L;
            if (l == 0) {
                L = 1.0;
            } else if (l == 1) {
                L = cur;
            } else {
                const double next = ((2.0 * (l - 1) + 1.0 - s) * cur - (l - 1.0) * prev) / l;
                prev = cur;
                cur = next;
                L = cur;
            }
            pl[l] = base * L;
        }
    }

    const cplx expo = -zeta / B0;
    auto integrand = [&](double t) -> cplx {
        const cplx weight = std::exp(expo * std::log(t));
        const double t2 = t * t;
        cplx diff = 0.0;
        if (t < 0.5) {
            double pw = std::pow(t2, l0 + 1);
            for (int l = l0 + 1; l < static_cast<int>(pl.size()); ++l) {
                diff += pw * pl[l];
                pw *= t2;
            }
        } else {
            diff = qt_kernel(B0, t2, x, y);
            double pw = 1.0;
            for (int l = 0; l <= l0; ++l) {
                diff -= pw * pl[l];
                pw *= t2;
            }
        }
        return weight * diff;
    };

    AdaptiveQuadResult r = integrate_adaptive(integrand, 0.0, 1.0, quad);
    cplx total = r.value;
    for (int l = 0; l <= l0; ++l) {
        if (levels.contains(l)) total += pl[l] / (2.0 * l + 1.0 - zeta / B0);
    }
    return {total / B0, r.error_estimate / B0, l0};
}

}  // namespace landau_ee
