#include "landau_ee/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/FFT>

namespace landau_ee {

namespace {

bool is_five_smooth(int n) {
    for (int p : {2, 3, 5}) {
        while (n % p == 0) n /= p;
    }
    return n == 1;
}

int next_smooth_even(int n) {
    if (n % 2) ++n;
    while (!is_five_smooth(n)) n += 2;
    return n;
}

}  // namespace

// ---- grid ---------------------------------------------------------------

Rule1D QuadratureGrid::radial_rule() const { return gauss_legendre(n_radial, 0.0, R_max); }

double QuadratureGrid::angle(int j) const { return angular_offset + 2.0 * kPi * j / n_angular; }

double QuadratureGrid::total_weight() const {
    const Rule1D r = radial_rule();
    double s = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) s += r.weights[k] * r.nodes[k];
    return 2.0 * kPi * s;
}

QuadratureGrid default_grid(const LandauBasisSpec& spec) {
    QuadratureGrid g;
    g.R_max = spec.outer_orbital_radius() + 5.0 * spec.magnetic_length();
    g.n_radial = 2 * spec.m_max() + 40;
    g.n_angular = next_smooth_even(4 * (spec.l_max() + spec.m_max() - 1) + 20);
    return g;
}

// ---- HermitianMatrix ----------------------------------------------------

HermitianMatrix HermitianMatrix::hermitize(CMatrix raw) {
    HermitianMatrix h;
    h.asymmetry = raw.rows() == 0 ? 0.0 : (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    h.m = 0.5 * (raw + raw.adjoint());
    return h;
}

double HermitianMatrix::hermiticity_residual() const {
    return m.rows() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---- regions ------------------------------------------------------------

std::string to_string(RegionShape shape) { return shape == RegionShape::disk ? "disk" : "square"; }

double RegionSpec::perimeter() const { return shape == RegionShape::disk ? 2.0 * kPi * size : 4.0 * size; }

double RegionSpec::area() const { return shape == RegionShape::disk ? kPi * size * size : size * size; }

double RegionSpec::circumradius() const { return shape == RegionShape::disk ? size : size / std::sqrt(2.0); }

bool RegionSpec::contains(Point x, double scale) const {
    const double s = size * scale;
    if (shape == RegionShape::disk) return norm2(x) < s * s;
    return std::abs(x.x) < 0.5 * s && std::abs(x.y) < 0.5 * s;
}

void RegionSpec::validate() const {
    if (!(size > 0.0) || !std::isfinite(size)) throw ValidationError("region: size must be positive");
}

int TruncationPolicy::m_max_for(double B0, const RegionSpec& region, double L) const {
    if (!automatic) return m_max;
    const double reach = L * region.circumradius() + margin_lengths / std::sqrt(B0);
    return static_cast<int>(std::ceil(0.5 * B0 * reach * reach)) + extra;
}

LandauBasisSpec TruncationPolicy::frame_for(double B0, const RegionSpec& region, double L) const {
    return LandauBasisSpec(B0, l_max, m_max_for(B0, region, L));
}

// ---- detail -------------------------------------------------------------

namespace detail {

RadialTable::RadialTable(double B0, int l_top_, int m_max_, const std::vector<double>& r)
    : l_top(l_top_), m_max(m_max_), n(static_cast<int>(r.size())) {
    values.resize(static_cast<std::size_t>(l_top + 1) * m_max * n);
#pragma omp parallel for schedule(static)
    for (int lm = 0; lm < (l_top + 1) * m_max; ++lm) {
        const int l = lm / m_max, m = lm % m_max;
        double* out = values.data() + static_cast<std::size_t>(lm) * n;
        for (int k = 0; k < n; ++k) out[k] = orbital_radial(B0, l, m, r[k]);
    }
}

std::vector<cplx> angular_coefficients(const std::vector<cplx>& samples, const QuadratureGrid& grid, int d_max) {
    const int N = grid.n_angular, nr = grid.n_radial;
    if (2 * d_max >= N) throw DomainError("angular_coefficients: angular grid too coarse for the requested band");
    const int nd = 2 * d_max + 1;
    std::vector<cplx> out(static_cast<std::size_t>(nd) * nr);
    std::vector<cplx> shift(nd);
    for (int d = -d_max; d <= d_max; ++d) shift[d + d_max] = (2.0 * kPi / N) * std::polar(1.0, d * grid.angular_offset);
#pragma omp parallel
    {
        Eigen::FFT<double> fft;
        std::vector<cplx> in(N), spec(N);
#pragma omp for schedule(static)
        for (int k = 0; k < nr; ++k) {
            std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(k) * N, N, in.begin());
            fft.fwd(spec, in);
            // sum_j f_j exp(+2 pi i d j / N) = fwd[-d mod N]
            for (int d = -d_max; d <= d_max; ++d) {
                out[static_cast<std::size_t>(d + d_max) * nr + k] = shift[d + d_max] * spec[((-d) % N + N) % N];
            }
        }
    }
    return out;
}

}  // namespace detail

namespace {

struct PolarSetup {
    Rule1D radial;
    std::vector<double> wr;  // w_k r_k
    detail::RadialTable table;
    std::vector<cplx> phase;  // (-i)^l, l = 0..l_top
};

PolarSetup polar_setup(const LandauBasisSpec& spec, const QuadratureGrid& grid, int l_top) {
    Rule1D radial = grid.radial_rule();
    std::vector<double> wr(radial.size());
    for (std::size_t k = 0; k < radial.size(); ++k) wr[k] = radial.weights[k] * radial.nodes[k];
    detail::RadialTable table(spec.B0(), l_top, spec.m_max(), radial.nodes);
    std::vector<cplx> phase(l_top + 1);
    for (int l = 0; l <= l_top; ++l) phase[l] = orbital_phase(l);
    return {std::move(radial), std::move(wr), std::move(table), std::move(phase)};
}

// Samples of a function on the polar grid, laid out [k][j].
template <class F>
std::vector<cplx> sample_polar(const QuadratureGrid& grid, const Rule1D& radial, F&& f) {
    const int N = grid.n_angular, nr = grid.n_radial;
    std::vector<double> c(N), s(N);
    for (int j = 0; j < N; ++j) {
        c[j] = std::cos(grid.angle(j));
        s[j] = std::sin(grid.angle(j));
    }
    std::vector<cplx> out(static_cast<std::size_t>(nr) * N);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nr; ++k) {
        const double r = radial.nodes[k];
        for (int j = 0; j < N; ++j) out[static_cast<std::size_t>(k) * N + j] = f(Point{r * c[j], r * s[j]});
    }
    return out;
}

void check_asymmetry(const HermitianMatrix& h, const AssemblyTolerances& tol, const char* what) {
    if (h.asymmetry > tol.max_asymmetry) {
        std::ostringstream os;
        os << what << ": asymmetry " << h.asymmetry << " before hermitization exceeds " << tol.max_asymmetry
           << "; the quadrature grid does not resolve the frame";
        throw AccuracyError(os.str());
    }
}

// Raw matrix of  W + 2 A.Pi  (include_w / include_a select the parts).
CMatrix assemble_perturbation_raw(const LandauBasisSpec& spec, const FieldFamily& field,
                                  const PotentialFamily& potential, const QuadratureGrid& grid, bool include_w,
                                  bool include_a) {
    const int dim = spec.dim(), mm = spec.m_max(), lmax = spec.l_max();
    CMatrix out = CMatrix::Zero(dim, dim);
    include_a = include_a && !field.is_zero();
    include_w = include_w && !(field.is_zero() && potential.is_zero());
    if (!include_a && !include_w) return out;

    const PolarSetup ps = polar_setup(spec, grid, lmax + 1);
    const int nr = grid.n_radial;
    const int d_max = mm + lmax;

    std::vector<cplx> w_hat, gm_hat, gp_hat;
    if (include_w) {
        w_hat = detail::angular_coefficients(
            sample_polar(grid, ps.radial,
                         [&](Point x) -> cplx {
                             double w = potential.eval(x);
                             if (!field.is_zero()) w += norm2(gauge_closed_form(field, x));
                             return w;
                         }),
            grid, d_max);
    }
    if (include_a) {
        const auto a_samples = sample_polar(grid, ps.radial, [&](Point x) -> cplx {
            const Point a = gauge_closed_form(field, x);
            return {a.x, a.y};
        });
        std::vector<cplx> gm(a_samples.size()), gp(a_samples.size());
        for (std::size_t i = 0; i < a_samples.size(); ++i) {
            const double a1 = a_samples[i].real(), a2 = a_samples[i].imag();
            gm[i] = cplx(a1, -a2);
            gp[i] = cplx(a1, a2);
        }
        gm_hat = detail::angular_coefficients(gm, grid, d_max);
        gp_hat = detail::angular_coefficients(gp, grid, d_max);
    }

    const double sb = std::sqrt(spec.B0());
    auto element = [&](const std::vector<cplx>& hat, const double* ai, int li, int mi, int lt, int mt) {
        const double* rt = ps.table.row(lt, mt);
        const int d = (mi - li) - (mt - lt);
        const cplx* h = hat.data() + static_cast<std::size_t>(d + d_max) * nr;
        cplx s = 0.0;
        for (int k = 0; k < nr; ++k) s += (ai[k] * rt[k]) * h[k];
        return std::conj(ps.phase[li]) * ps.phase[lt] * s;
    };

#pragma omp parallel
    {
        std::vector<double> ai(nr);
#pragma omp for schedule(dynamic, 4)
        for (int i = 0; i < dim; ++i) {
            const int li = i / mm, mi = i % mm;
            const double* ri = ps.table.row(li, mi);
            for (int k = 0; k < nr; ++k) ai[k] = ps.wr[k] * ri[k];
            for (int j = 0; j < dim; ++j) {
                const int lj = j / mm, mj = j % mm;
                cplx v = 0.0;
                if (include_w) v += element(w_hat, ai.data(), li, mi, lj, mj);
                if (include_a) {
                    // 2 A.Pi = sqrt(B0) [(A1 - i A2) a_+ + (A1 + i A2) a_-]
                    cplx a = std::sqrt(2.0 * lj + 2.0) * element(gm_hat, ai.data(), li, mi, lj + 1, mj);
                    if (lj > 0) a += std::sqrt(2.0 * lj) * element(gp_hat, ai.data(), li, mi, lj - 1, mj);
                    v += sb * a;
                }
                out(i, j) = v;
            }
        }
    }
    return out;
}

}  // namespace

// ---- assembly -----------------------------------------------------------

HermitianMatrix assemble_h0(const LandauBasisSpec& spec) {
    CVector d(spec.dim());
    for (int i = 0; i < spec.dim(); ++i) d(i) = spec.level_energy(spec.at(i).l);
    HermitianMatrix h;
    h.m = d.asDiagonal();
    return h;
}

HermitianMatrix assemble_gram(const LandauBasisSpec& spec, const QuadratureGrid& grid) {
    // Delta = 0 blocks only: the angular integral of exp(-i(q_j - q_i) theta) is exact on the grid.
    const PolarSetup ps = polar_setup(spec, grid, spec.l_max());
    const int dim = spec.dim(), mm = spec.m_max(), nr = grid.n_radial;
    CMatrix g = CMatrix::Zero(dim, dim);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < dim; ++i) {
        const int li = i / mm, mi = i % mm;
        for (int lj = 0; lj <= spec.l_max(); ++lj) {
            const int mj = mi - li + lj;
            if (mj < 0 || mj >= mm) continue;
            const double* a = ps.table.row(li, mi);
            const double* b = ps.table.row(lj, mj);
            double s = 0.0;
            for (int k = 0; k < nr; ++k) s += ps.wr[k] * a[k] * b[k];
            g(i, lj * mm + mj) = 2.0 * kPi * std::conj(ps.phase[li]) * ps.phase[lj] * s;
        }
    }
    return HermitianMatrix::hermitize(std::move(g));
}

HermitianMatrix assemble_heps(const LandauBasisSpec& spec, const FieldFamily& field, const PotentialFamily& potential,
                              const QuadratureGrid& grid, const AssemblyTolerances& tol) {
    auto h = HermitianMatrix::hermitize(assemble_perturbation_raw(spec, field, potential, grid, true, true));
    check_asymmetry(h, tol, "assemble_heps");
    return h;
}

HermitianMatrix assemble_heps_linear(const LandauBasisSpec& spec, const FieldFamily& field,
                                     const QuadratureGrid& grid, const AssemblyTolerances& tol) {
    auto h = HermitianMatrix::hermitize(
        assemble_perturbation_raw(spec, field, PotentialFamily::zero(field.tameness()), grid, false, true));
    check_asymmetry(h, tol, "assemble_heps_linear");
    return h;
}

HermitianMatrix assemble_full_h(const LandauBasisSpec& spec, const FieldFamily& field,
                                const PotentialFamily& potential, const QuadratureGrid& grid,
                                const AssemblyTolerances& tol) {
    HermitianMatrix h = assemble_heps(spec, field, potential, grid, tol);
    h.m += assemble_h0(spec).m;
    return h;
}

namespace {

void check_overlap_spectrum(const HermitianMatrix& o, const AssemblyTolerances& tol) {
    if (o.dim() == 0) return;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(o.m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo < -tol.overlap_slack || hi > 1.0 + tol.overlap_slack) {
        std::ostringstream os;
        os << "assemble_overlap: eigenvalues span [" << lo << ", " << hi << "], outside [0,1] by more than "
           << tol.overlap_slack << "; quadrature inadequate";
        throw AccuracyError(os.str());
    }
}

CMatrix disk_overlap(const LandauBasisSpec& spec, double radius, const QuadratureGrid& grid) {
    const int dim = spec.dim(), mm = spec.m_max();
    CMatrix o = CMatrix::Zero(dim, dim);
    const double top = std::min(radius, grid.R_max);
    if (top <= 0.0) return o;
    const Rule1D rule = gauss_legendre(grid.n_radial, 0.0, top);
    const detail::RadialTable table(spec.B0(), spec.l_max(), mm, rule.nodes);
    const int n = static_cast<int>(rule.size());
    std::vector<double> wr(n);
    for (int k = 0; k < n; ++k) wr[k] = rule.weights[k] * rule.nodes[k];
#pragma omp parallel for schedule(static)
    for (int i = 0; i < dim; ++i) {
        const int li = i / mm, mi = i % mm;
        for (int lj = 0; lj <= spec.l_max(); ++lj) {
            const int mj = mi - li + lj;
            if (mj < 0 || mj >= mm) continue;
            const double* a = table.row(li, mi);
            const double* b = table.row(lj, mj);
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += wr[k] * a[k] * b[k];
            o(i, lj * mm + mj) = 2.0 * kPi * std::conj(orbital_phase(li)) * orbital_phase(lj) * s;
        }
    }
    return o;
}

CMatrix square_overlap(const LandauBasisSpec& spec, double side, const QuadratureGrid& grid) {
    const int dim = spec.dim();
    CMatrix o = CMatrix::Zero(dim, dim);
    const double half = std::min(0.5 * side, grid.R_max);
    if (half <= 0.0) return o;
    // Products of two orbitals oscillate with wavenumber up to about sqrt(2 B0 (m_max + l_max + 1)).
    const double kmax = std::sqrt(2.0 * spec.B0() * (spec.m_max() + spec.l_max() + 1.0)) + 2.0 * std::sqrt(spec.B0());
    const int panels = static_cast<int>(std::ceil(2.0 * half * kmax / 8.0)) + 1;
    const Rule1D rule = composite_gauss_legendre(16, panels, -half, half);
    const int n1 = static_cast<int>(rule.size());
    const long npts = static_cast<long>(n1) * n1;

    constexpr long kChunk = 1024;
    constexpr int kColBlock = 32;
    CMatrix phi(kChunk, dim);
    for (long start = 0; start < npts; start += kChunk) {
        const long count = std::min(kChunk, npts - start);
        // rows scaled by sqrt(w) so the block contributes phi^* phi
#pragma omp parallel for schedule(static)
        for (long p = 0; p < count; ++p) {
            const long idx = start + p;
            const int a = static_cast<int>(idx / n1), b = static_cast<int>(idx % n1);
            const Point x{rule.nodes[a], rule.nodes[b]};
            const double sw = std::sqrt(rule.weights[a] * rule.weights[b]);
            for (int i = 0; i < dim; ++i) {
                const BasisIndex bi = spec.at(i);
                phi(p, i) = sw * landau_orbital(spec.B0(), bi.l, bi.m, x);
            }
        }
        const auto block = phi.topRows(count);
        const int nblocks = (dim + kColBlock - 1) / kColBlock;
#pragma omp parallel for schedule(static)
        for (int cb = 0; cb < nblocks; ++cb) {
            const int c0 = cb * kColBlock, w = std::min(kColBlock, dim - c0);
            o.middleCols(c0, w).noalias() += block.adjoint() * block.middleCols(c0, w);
        }
    }
    return o;
}

}  // namespace

HermitianMatrix assemble_overlap(const LandauBasisSpec& spec, const RegionSpec& region, double L,
                                 const QuadratureGrid& grid, const AssemblyTolerances& tol) {
    region.validate();
    if (!(L >= 0.0)) throw DomainError("assemble_overlap: scale must be non-negative");
    CMatrix raw = region.shape == RegionShape::disk ? disk_overlap(spec, L * region.size, grid)
                                                    : square_overlap(spec, L * region.size, grid);
    HermitianMatrix o = HermitianMatrix::hermitize(std::move(raw));
    check_overlap_spectrum(o, tol);
    return o;
}

}  // namespace landau_ee
