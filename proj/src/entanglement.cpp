#include "landau_ee/entanglement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "landau_ee/parallel.hpp"
#include "landau_ee/schatten.hpp"

namespace landau_ee {

// ---- spectra ------------------------------------------------------------

EntanglementSpectrum entanglement_spectrum(const CMatrix& frame, const CMatrix& overlap, const ClipTolerances& tol) {
    if (frame.rows() != overlap.rows()) throw DomainError("entanglement_spectrum: frame and overlap dimensions differ");
    EntanglementSpectrum es;
    if (frame.cols() == 0) return es;
    CMatrix c = frame.adjoint() * overlap * frame;
    c = (0.5 * (c + c.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(c, Eigen::EigenvaluesOnly);
    const RVector& ev = solver.eigenvalues();
    es.trace = ev.sum();
    es.min_raw = ev.minCoeff();
    es.max_raw = ev.maxCoeff();
    es.lambdas.reserve(ev.size());
    for (Eigen::Index i = ev.size(); i-- > 0;) {
        const double x = ev(i);
        const double out = std::max(-x, x - 1.0);
        if (out > tol.error) {
            std::ostringstream os;
            os << "entanglement_spectrum: eigenvalue " << x << " lies " << out
               << " outside [0,1]; the truncation is inadequate";
            throw AccuracyError(os.str());
        }
        if (out > tol.clip) ++es.clip_count;
        es.lambdas.push_back(std::clamp(x, 0.0, 1.0));
    }
    return es;
}

EntanglementSpectrum entanglement_spectrum_from_projection(const CMatrix& pi, const CMatrix& overlap,
                                                           const ClipTolerances& tol) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (pi + pi.adjoint()));
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
    }
    return entanglement_spectrum(es.eigenvectors()(Eigen::all, cols), overlap, tol);
}

std::string to_string(HamiltonianTag tag) { return tag == HamiltonianTag::perturbed ? "perturbed" : "unperturbed"; }

EntropyResult local_entropy(const EntanglementSpectrum& es, RenyiOrder alpha, double L, HamiltonianTag tag) {
    EntropyResult r;
    r.L = L;
    r.alpha = alpha.value();
    r.tag = tag;
    for (double x : es.lambdas) {
        r.S += renyi_h(alpha, x);
        const double y = std::min(x, 1.0 - x);
        r.S_dual += g_of_t(alpha, std::min(1.0, 4.0 * y * (1.0 - y)));
    }
    if (std::abs(r.S - r.S_dual) > kDualFormulaTolerance * std::max(1.0, r.S)) {
        std::ostringstream os;
        os.precision(17);
        os << "local_entropy: h-route " << r.S << " and g-route " << r.S_dual << " disagree";
        throw AccuracyError(os.str());
    }
    return r;
}

double cross_schatten_from_spectrum(const EntanglementSpectrum& es, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("cross_schatten_from_spectrum: p must be positive and finite");
    double acc = 0.0;
    for (double x : es.lambdas) {
        const double y = std::min(x, 1.0 - x);
        const double v = y * (1.0 - y);
        if (v > 0.0) acc += std::pow(v, 0.5 * p);
    }
    return acc;
}

double difference_cross_norm(const CMatrix& pi_unpert, const CMatrix& pi_pert, const CMatrix& overlap, double p) {
    if (pi_unpert.rows() != pi_pert.rows() || pi_unpert.rows() != overlap.rows())
        throw DomainError("difference_cross_norm: projections and overlap must share one frame");
    const CMatrix complement = CMatrix::Identity(overlap.rows(), overlap.cols()) - overlap;
    const CMatrix x = overlap * (pi_pert - pi_unpert) * complement;
    return schatten_power(singular_values(x), p);
}

// ---- table --------------------------------------------------------------

std::string format_p(double p) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, p);
    return std::string(buf, res.ptr);
}

std::vector<double> ScanTable::Ls() const {
    std::vector<double> out;
    for (const auto& r : rows) {
        if (out.empty() || out.back() != r.L) out.push_back(r.L);
    }
    return out;
}

std::vector<double> ScanTable::alphas() const {
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.L != rows.front().L) break;
        out.push_back(r.alpha);
    }
    return out;
}

std::vector<std::string> ScanTable::column_names() const {
    std::vector<std::string> names{"L", "alpha", "S_unpert", "S_pert"};
    for (double p : p_values) names.push_back("cross_p" + format_p(p));
    for (double p : p_values) names.push_back("diff_p" + format_p(p));
    return names;
}

std::vector<double> ScanTable::column(const std::string& name, double alpha) const {
    std::function<double(const ScanRow&)> get;
    if (name == "L") get = [](const ScanRow& r) { return r.L; };
    else if (name == "S_unpert") get = [](const ScanRow& r) { return r.S_unpert; };
    else if (name == "S_pert") get = [](const ScanRow& r) { return r.S_pert; };
    else {
        for (std::size_t i = 0; i < p_values.size() && !get; ++i) {
            if (name == "cross_p" + format_p(p_values[i])) get = [i](const ScanRow& r) { return r.cross[i]; };
            if (name == "diff_p" + format_p(p_values[i])) get = [i](const ScanRow& r) { return r.diff[i]; };
        }
    }
    if (!get) throw DomainError("scan table: unknown column '" + name + "'");
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.alpha == alpha) out.push_back(get(r));
    }
    if (out.empty()) throw DomainError("scan table: no rows for alpha " + format_p(alpha));
    return out;
}

// ---- scan ---------------------------------------------------------------

namespace {

struct RowResult {
    std::vector<ScanRow> rows;
    ScanDiagnostics diag;
};

RowResult scan_one(const ScanSpec& spec, double L) {
    const LandauBasisSpec frame = spec.truncation.frame_for(spec.B0, spec.region, L);
    QuadratureGrid grid = default_grid(frame);
    grid.angular_offset = spec.angular_offset;

    const HermitianMatrix overlap = assemble_overlap(frame, spec.region, L, grid, spec.assembly);
    const Projection unpert = level_projection(frame, spec.window);

    RowResult out;
    out.diag.L = L;
    out.diag.l_max = frame.l_max();
    out.diag.m_max = frame.m_max();
    out.diag.rank_unpert = unpert.rank;

    const bool zero = spec.field.is_zero() && spec.potential.is_zero();
    Projection pert;
    if (zero) {
        pert = unpert;
    } else {
        const HermitianMatrix h = assemble_full_h(frame, spec.field, spec.potential, grid, spec.assembly);
        out.diag.heps_asymmetry = h.asymmetry;
        const double tol = std::max(spec.endpoint_gap * spec.B0, 1e-12 * singular_values(h.m)(0));
        pert = fermi_projection(h.m, spec.window, tol);
    }
    out.diag.rank_pert = pert.rank;

    const EntanglementSpectrum es_u = entanglement_spectrum(unpert.frame, overlap.m, spec.clip);
    const EntanglementSpectrum es_p = zero ? es_u : entanglement_spectrum(pert.frame, overlap.m, spec.clip);
    out.diag.clip_count = es_u.clip_count + (zero ? 0 : es_p.clip_count);

    std::vector<double> cross, diff;
    for (double p : spec.p_values) {
        cross.push_back(cross_schatten_from_spectrum(es_p, p));
        diff.push_back(zero ? 0.0 : difference_cross_norm(unpert.p, pert.p, overlap.m, p));
    }
    for (double a : spec.alphas) {
        const RenyiOrder alpha(a);
        ScanRow row;
        row.L = L;
        row.alpha = a;
        row.S_unpert = local_entropy(es_u, alpha, L, HamiltonianTag::unperturbed).S;
        row.S_pert = zero ? row.S_unpert : local_entropy(es_p, alpha, L, HamiltonianTag::perturbed).S;
        row.cross = cross;
        row.diff = diff;
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace

ScanTable area_law_scan(const ScanSpec& spec) {
    if (spec.L_grid.empty()) throw DomainError("area_law_scan: empty L grid");
    for (std::size_t i = 1; i < spec.L_grid.size(); ++i) {
        if (!(spec.L_grid[i] > spec.L_grid[i - 1])) throw DomainError("area_law_scan: L grid must be strictly increasing");
    }
    if (spec.alphas.empty()) throw DomainError("area_law_scan: no Renyi orders");
    for (double a : spec.alphas) (void)RenyiOrder(a);
    for (double p : spec.p_values) {
        if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("area_law_scan: p values must be positive and finite");
    }
    spec.region.validate();

    const int n = static_cast<int>(spec.L_grid.size());
    std::vector<RowResult> results(n);
    const int threads = std::max(1, std::min(n, spec.jobs > 0 ? spec.jobs : max_threads()));
    ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        slot.run([&] {
            try {
                results[i] = scan_one(spec, spec.L_grid[i]);
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "scan row L=" << spec.L_grid[i] << ": " << e.what();
                throw Error(os.str());
            }
        });
    }
    slot.rethrow();

    ScanTable table;
    table.p_values = spec.p_values;
    for (auto& r : results) {
        for (auto& row : r.rows) table.rows.push_back(std::move(row));
        table.diagnostics.push_back(r.diag);
    }
    return table;
}

// ---- fits ---------------------------------------------------------------

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("fit_linear: x and y differ in length");
    const int n = static_cast<int>(x.size());
    if (n < 3) throw DomainError("fit_linear: degenerate window, need at least 3 points");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_linear: degenerate window, all x equal");
    LinearFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

namespace {

template <class T>
std::vector<T> tail(const std::vector<T>& v, int window) {
    if (window <= 0 || window >= static_cast<int>(v.size())) return v;
    return std::vector<T>(v.end() - window, v.end());
}

}  // namespace

LinearFit fit_slope(const ScanTable& table, const std::string& column, double alpha, int window) {
    return fit_linear(tail(table.column("L", alpha), window), tail(table.column(column, alpha), window));
}

double pnorm_scaling_exponent(const ScanTable& table, NormKind which, double p, int window) {
    const std::string name = (which == NormKind::same ? "cross_p" : "diff_p") + format_p(p);
    const double alpha = table.rows.empty() ? 1.0 : table.rows.front().alpha;
    const auto L = tail(table.column("L", alpha), window);
    const auto v = tail(table.column(name, alpha), window);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0) || !(L[i] > 0.0)) {
            std::ostringstream os;
            os << "pnorm_scaling_exponent: non-positive value " << v[i] << " in column " << name << " at L=" << L[i];
            throw DomainError(os.str());
        }
        lx.push_back(std::log(L[i]));
        ly.push_back(std::log(v[i]));
    }
    return fit_linear(lx, ly).slope;
}

}  // namespace landau_ee
