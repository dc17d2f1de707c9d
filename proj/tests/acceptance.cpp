// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "landau_ee/assembly.hpp"
#include "landau_ee/entanglement.hpp"
#include "landau_ee/landau.hpp"
#include "landau_ee/report.hpp"
#include "landau_ee/schatten.hpp"
#include "landau_ee/spectral.hpp"
#include "landau_ee/study.hpp"

using namespace landau_ee;

namespace {

int g_failures = 0;

struct Verdict {
    bool pass = false;
    std::string detail;
};

void criterion(int id, const std::string& title, double budget_s, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = v.pass;
    std::string timing = "time " + format_number(std::round(secs * 100.0) / 100.0) + " s";
    if (budget_s > 0.0) {
        timing += " (budget " + format_number(budget_s) + " s)";
        if (secs > budget_s) pass = false;
    }
    if (!pass) ++g_failures;
    std::printf("AC%-2d %s  %s: %s; %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), v.detail.c_str(), timing.c_str());
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

CMatrix random_complex(std::mt19937_64& rng, int n, int m) {
    std::normal_distribution<double> g;
    CMatrix a(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = cplx(g(rng), g(rng));
    return a;
}

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
    const CMatrix a = random_complex(rng, n, n);
    return 0.5 * (a + a.adjoint());
}

const TamenessParams kTame(2, 0.5);
const FieldFamily kBump = FieldFamily::gaussian_bump(0.3, 1.0, {0.0, 0.0}, kTame);
const PotentialFamily kV = PotentialFamily::gaussian(0.2, 1.0, {0.0, 0.0}, kTame);

// Shared configuration of criteria 8-10 and 12.
StudyConfig scan_config(const std::string& out) {
    StudyConfig c;
    c.B0 = 1.0;
    c.field = {"gaussian", 0.3, 1.0, 2.0, {0.0, 0.0}};
    c.potential = {"gaussian", 0.2, 1.0, 2.0, {0.0, 0.0}};
    c.region = RegionSpec::disk(1.0);
    c.L_min = 3;
    c.L_max = 8;
    c.L_count = 6;
    c.alphas = {0.5, 1.0, 2.0};
    c.window = {0.5, 2.0};
    c.p_values = {1.0};
    c.fit_window = 3;
    c.out = out;
    c.plots = false;
    c.validate();
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    criterion(1, "kernel completeness (l<=3, m_max=120, |x|,|y|<=4) <= 1e-6", 10.0, [] {
        std::vector<Point> pts{{0.0, 0.0}};
        for (double r : {1.0, 2.0, 3.0, 4.0}) {
            for (int j = 0; j < 6; ++j) {
                const double th = kPi * j / 3.0 + 0.3 * r;
                pts.push_back({r * std::cos(th), r * std::sin(th)});
            }
        }
        double worst = 0.0;
        for (int l = 0; l <= 3; ++l) {
            std::vector<std::vector<cplx>> v(pts.size(), std::vector<cplx>(120));
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (int m = 0; m < 120; ++m) v[i][m] = landau_orbital(1.0, l, m, pts[i]);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    cplx s = 0.0;
                    for (int m = 0; m < 120; ++m) s += v[i][m] * std::conj(v[j][m]);
                    worst = std::max(worst, std::abs(s - pl_kernel(1.0, l, pts[i], pts[j])));
                }
            }
        }
        return Verdict{worst <= 1e-6, "max gap " + sci(worst)};
    });

    criterion(2, "generating function t=0.3, |x-y| in {0.1,1,3} <= 1e-10", 1.0, [] {
        double worst = 0.0;
        const Point x{0.4, -0.3};
        for (double d : {0.1, 1.0, 3.0}) {
            const Point y = x + Point{0.8 * d, -0.6 * d};
            cplx s = 0.0;
            for (int l = 0; l <= 40; ++l) s += std::pow(0.3, l) * pl_kernel(1.0, l, x, y);
            worst = std::max(worst, std::abs(s - qt_kernel(1.0, 0.3, x, y)));
        }
        return Verdict{worst <= 1e-10, "max gap " + sci(worst)};
    });

    criterion(3, "Coulomb gauge: curl/div <= 1e-4 (h=1e-3, 20 points), closed form vs quadrature <= 1e-6", 30.0, [] {
        const FieldFamily fams[] = {FieldFamily::gaussian_bump(0.3, 1.0, {0.5, -0.25}, kTame),
                                    FieldFamily::power_law(0.3, 2.5, {0.5, -0.25}, kTame)};
        const auto pts = audit_points(20, 0.05, 50.0);
        double fd = 0.0, agree = 0.0;
        for (const auto& f : fams) {
            for (const Point& x : pts) {
                const auto cd = curl_div_check(f, x, 1e-3);
                fd = std::max({fd, std::abs(cd.curl_error), std::abs(cd.div_error)});
                agree = std::max(agree, std::sqrt(norm2(gauge_closed_form(f, x) - gauge_quadrature(f, x).value)));
            }
        }
        return Verdict{fd <= 1e-4 && agree <= 1e-6, "curl/div " + sci(fd) + ", closed vs quadrature " + sci(agree)};
    });

    criterion(4, "Riesz vs eigenprojection, 64 nodes, Frobenius <= 1e-8", 10.0, [] {
        // (a) random 10x10 Hermitian: Haar-random eigenbasis, 4 eigenvalues inside the contour, 6 outside.
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> in(-0.5, 0.5), out(2.0, 4.0);
        RVector lam(10);
        for (int i = 0; i < 10; ++i) lam(i) = i < 4 ? in(rng) : (i % 2 ? -1.0 : 1.0) * out(rng);
        const Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, 10, 10));
        const CMatrix u = qr.householderQ();
        CMatrix h = u * lam.cast<cplx>().asDiagonal() * u.adjoint();
        h = 0.5 * (h + h.adjoint());
        const double ga = (riesz_projection(h, ContourSpec::through({-1.0, 1.0}, 64)) -
                           fermi_projection(h, {-1.0, 1.0}, 1e-8).p)
                              .norm();
        // (b) assembled perturbed H around the l=0 cluster.
        const LandauBasisSpec spec = TruncationPolicy{}.frame_for(1.0, RegionSpec::disk(1.0), 3.0);
        const CMatrix hb = assemble_full_h(spec, kBump, kV, default_grid(spec)).m;
        const double gb = (riesz_projection(hb, ContourSpec::through({0.0, 2.0}, 64)) -
                           fermi_projection(hb, {0.0, 2.0}, 1e-8).p)
                              .norm();
        return Verdict{ga <= 1e-8 && gb <= 1e-8,
                       "random " + sci(ga) + ", assembled (dim " + std::to_string(spec.dim()) + ") " + sci(gb)};
    });

    criterion(5, "resolvent expansion, relative residual <= 1e-10, n in {1,2,3}", 10.0, [] {
        double worst = 0.0;
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 3; ++trial) {
            const CMatrix h0 = random_hermitian(rng, 50), he = 0.3 * random_hermitian(rng, 50);
            for (int n = 1; n <= 3; ++n)
                worst = std::max(worst, resolvent_expansion_residual(h0, he, cplx(0.2, 0.9), n).relative);
        }
        const LandauBasisSpec spec = TruncationPolicy{}.frame_for(1.0, RegionSpec::disk(1.0), 3.0);
        const CMatrix h0 = assemble_h0(spec).m, he = assemble_heps(spec, kBump, kV, default_grid(spec)).m;
        double assembled = 0.0;
        for (int n = 1; n <= 3; ++n)
            assembled = std::max(assembled, resolvent_expansion_residual(h0, he, cplx(2.0, 0.5), n).relative);
        return Verdict{worst <= 1e-10 && assembled <= 1e-10, "random " + sci(worst) + ", assembled " + sci(assembled)};
    });

    criterion(6, "contour identity: k=0 <= 1e-12; k in {1,2}, l=0: relative gap <= 1e-5 at l_max=6, decreasing to 8",
              60.0, [] {
        const int m_max = 12;
        const LandauBasisSpec ref(1.0, 10, m_max);
        const CMatrix he_ref = assemble_heps(ref, kBump, PotentialFamily::zero(kTame), default_grid(ref)).m;
        bool ok = true;
        std::string d;
        for (int l_max : {6, 8}) {
            const LandauBasisSpec spec(1.0, l_max, m_max);
            const CMatrix he = he_ref.topLeftCorner(spec.dim(), spec.dim());
            const auto ids = contour_term_identities(spec, he, 0, 2, 96);
            ok = ok && ids[0].frobenius_diff <= 1e-12 && ids[1].relative_diff <= 1e-5 && ids[2].relative_diff <= 1e-5;
            d += "l_max=" + std::to_string(l_max) + ": k0 " + sci(ids[0].frobenius_diff) + ", k1 " +
                 sci(ids[1].relative_diff) + ", k2 " + sci(ids[2].relative_diff) + " (k2 vs exact residue " +
                 sci((ids[2].lhs - contour_term_residue(spec, he, 0, 2)).norm() / ids[2].lhs.norm()) + "); ";
        }
        for (int k = 1; k <= 2; ++k) {
            const double g6 = contour_truncation_gap(ref, he_ref, 6, 0, k, 2, 96);
            const double g8 = contour_truncation_gap(ref, he_ref, 8, 0, k, 2, 96);
            ok = ok && g8 <= g6;
            d += "truncation k" + std::to_string(k) + " " + sci(g6) + " -> " + sci(g8) + (k == 1 ? "; " : "");
        }
        return Verdict{ok, d};
    });

    criterion(7, "Schatten property suite, 11 items x 100 trials, slack >= -1e-9", 30.0, [] {
        const auto checks = schatten_property_suite(1, 100, 1e-9);
        bool ok = checks.size() == 11;
        double worst = 1e300;
        std::string failed;
        for (const auto& c : checks) {
            ok = ok && c.passed() && c.trials == 100;
            worst = std::min(worst, c.worst_slack);
            if (!c.passed()) failed += " " + c.name;
        }
        return Verdict{ok, "worst slack " + sci(worst) + (failed.empty() ? "" : ", failed:" + failed)};
    });

    // Criteria 8-10 share one scan.
    const auto dir = std::filesystem::temp_directory_path() / "landau_ee_acceptance";
    std::filesystem::remove_all(dir);
    const StudyConfig cfg = scan_config((dir / "a").string());
    StudyResult scan;
    double scan_secs = 0.0;
    bool scan_ok = true;
    std::string scan_error;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        scan = run_scan(cfg);
        scan_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } catch (const std::exception& e) {
        scan_ok = false;
        scan_error = e.what();
    }
    const auto need_scan = [&] {
        if (!scan_ok) throw std::runtime_error("scan failed: " + scan_error);
    };

    criterion(8, "area law: S_1/L successive change <= 2% over top three L, r^2 >= 0.999", 600.0, [&] {
        need_scan();
        const auto Ls = scan.table.Ls();
        const auto S = scan.table.column("S_unpert", 1.0);
        double worst = 0.0;
        for (std::size_t i = Ls.size() - 2; i < Ls.size(); ++i) {
            const double a = S[i - 1] / Ls[i - 1], b = S[i] / Ls[i];
            worst = std::max(worst, std::abs(b - a) / std::abs(a));
        }
        const LinearFit f = fit_linear(Ls, S);
        int max_dim = 0;
        for (const auto& dg : scan.table.diagnostics) max_dim = std::max(max_dim, (dg.l_max + 1) * dg.m_max);
        return Verdict{worst <= 0.02 && f.r_squared >= 0.999,
                       "max change " + sci(worst) + ", r^2 " + format_number(f.r_squared) + ", largest dim " +
                           std::to_string(max_dim) + ", scan " + sci(scan_secs) + " s"};
    });

    criterion(9, "stability: perturbed vs unperturbed slope within 5% for alpha in {0.5,1,2}", 0.0, [&] {
        need_scan();
        bool ok = true;
        std::string d;
        for (double a : {0.5, 1.0, 2.0}) {
            const double su = fit_slope(scan.table, "S_unpert", a, 3).slope;
            const double sp = fit_slope(scan.table, "S_pert", a, 3).slope;
            const double rel = std::abs(sp - su) / std::abs(su);
            ok = ok && rel <= 0.05;
            d += "alpha " + format_number(a) + ": " + sci(rel) + " ";
        }
        return Verdict{ok, d};
    });

    criterion(10, "norm scaling p=1: same-operator exponent in [0.8,1.1], difference exponent <= it - 0.2", 0.0, [&] {
        need_scan();
        const double same = pnorm_scaling_exponent(scan.table, NormKind::same, 1.0, 3);
        const double diff = pnorm_scaling_exponent(scan.table, NormKind::difference, 1.0, 3);
        return Verdict{same >= 0.8 && same <= 1.1 && diff <= same - 0.2,
                       "same " + format_number(same) + ", difference " + format_number(diff)};
    });

    criterion(11, "|H_eps M_{N,2B0}|_{4 n0} over l_max in {4,6,8}: final relative increment <= 2%", 120.0, [] {
        const int m_max = 30;
        const double p = 4.0 * kTame.n0();
        std::vector<LandauBasisSpec> frames;
        for (int l : {4, 6, 8}) frames.emplace_back(1.0, l, m_max);
        const auto v = heps_resolvent_schatten(frames, kBump, kV, cplx(2.0, 0.0), p);
        const double inc = std::abs(v[2] - v[1]) / v[1];
        return Verdict{inc <= 0.02, "p=" + format_number(p) + " norms " + sci(v[0]) + ", " + sci(v[1]) + ", " +
                                        sci(v[2]) + "; increment " + sci(inc)};
    });

    criterion(12, "determinism: rerun yields byte-identical CSV", 0.0, [&] {
        need_scan();
        write_scan_outputs(cfg, scan);
        StudyConfig again = cfg;
        again.out = (dir / "b").string();
        write_scan_outputs(again, run_scan(again));
        const std::string a = slurp(dir / "a" / "scan.csv"), b = slurp(dir / "b" / "scan.csv");
        return Verdict{!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "differ")};
    });

    std::filesystem::remove_all(dir);
    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
