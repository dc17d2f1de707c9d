#include "landau_ee/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace landau_ee {

RVector singular_values(const CMatrix& m) {
    if (m.size() == 0) return RVector();
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues();
}

namespace {

// Singular values at or below this are rounding noise of a rank-deficient matrix; for p < 1
// they would otherwise dominate the sum.
double noise_floor(const RVector& s) {
    return s.size() ? s.maxCoeff() * static_cast<double>(s.size()) * std::numeric_limits<double>::epsilon() : 0.0;
}

}  // namespace

double schatten_power(const RVector& s, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("schatten_power: p must be positive and finite");
    if (s.size() == 0) return 0.0;
    const double smax = s.maxCoeff();
    if (smax <= 0.0) return 0.0;
    if (p < 1.0) {
        // log-sum-exp of p log s_k
        const double top = p * std::log(smax);
        const double floor = noise_floor(s);
        double acc = 0.0;
        for (Eigen::Index k = 0; k < s.size(); ++k) {
            if (s(k) > floor) acc += std::exp(p * std::log(s(k)) - top);
        }
        return std::exp(top + std::log(acc));
    }
    double acc = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s(k) / smax, p);
    return std::pow(smax, p) * acc;
}

SchattenReport schatten_from_singular_values(RVector s, double p) {
    if (!(p > 0.0)) throw DomainError("schatten_pnorm: p must be positive");
    SchattenReport r;
    r.p = p;
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    if (s.size() > 0 && s(0) > 0.0) {
        if (std::isinf(p)) {
            r.value = s(0);
        } else if (p < 1.0) {
            const double top = std::log(s(0));
            const double floor = noise_floor(s);
            double acc = 0.0;
            for (Eigen::Index k = 0; k < s.size(); ++k) {
                if (s(k) > floor) acc += std::exp(p * (std::log(s(k)) - top));
            }
            r.value = std::exp(top + std::log(acc) / p);
        } else {
            double acc = 0.0;
            for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s(k) / s(0), p);
            r.value = s(0) * std::pow(acc, 1.0 / p);
        }
    }
    r.singular_values = std::move(s);
    return r;
}

SchattenReport schatten_pnorm(const CMatrix& m, double p) { return schatten_from_singular_values(singular_values(m), p); }

// ---- property suite -----------------------------------------------------

namespace {

using Rng = std::mt19937_64;

CMatrix random_matrix(Rng& rng, int rows, int cols) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
    }
    return m;
}

int random_dim(Rng& rng) { return std::uniform_int_distribution<int>(5, 40)(rng); }

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

double norm_p(const CMatrix& m, double p) { return schatten_pnorm(m, p).value; }

/// Hermitian power of a positive semidefinite matrix.
CMatrix psd_power(const CMatrix& s, double p) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
    RVector ev = es.eigenvalues().cwiseMax(0.0);
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::pow(ev(i), p);
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix random_psd(Rng& rng, int n) {
    const CMatrix x = random_matrix(rng, n, n);
    return x * x.adjoint() / static_cast<double>(n);
}

struct Tally {
    PropertyCheck check;
    double tol;

    // lhs <= rhs
    void le(double lhs, double rhs) {
        record((rhs - lhs) / std::max(1.0, std::abs(rhs)));
    }
    void eq(double lhs, double rhs) { record(-std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs))); }
    void record(double slack) {
        ++check.trials;
        check.worst_slack = std::min(check.worst_slack, slack);
        if (slack < -tol || std::isnan(slack)) ++check.failures;
    }
};

}  // namespace

std::vector<PropertyCheck> schatten_property_suite(std::uint64_t seed, int trials, double tolerance) {
    if (trials < 1) throw DomainError("schatten_property_suite: need at least one trial");
    Rng rng(seed);
    auto make = [&](const char* name) { return Tally{PropertyCheck{name}, tolerance}; };
    std::vector<Tally> t;
    t.push_back(make("Monotonicity I"));
    t.push_back(make("Monotonicity II"));
    t.push_back(make("Triangle inequality"));
    t.push_back(make("p-triangle inequality"));
    t.push_back(make("Powers"));
    t.push_back(make("Square"));
    t.push_back(make("Adjoint"));
    t.push_back(make("Hoelder I"));
    t.push_back(make("Hoelder II"));
    t.push_back(make("Hilbert-Schmidt kernel"));
    t.push_back(make("Orthogonality"));

    for (int trial = 0; trial < trials; ++trial) {
        const int n = random_dim(rng);
        {
            const CMatrix s = random_matrix(rng, n, random_dim(rng));
            const double p = uniform(rng, 0.2, 4.0);
            const double q = trial % 4 == 0 ? kSchattenInf : uniform(rng, p, 8.0);
            t[0].le(norm_p(s, q), norm_p(s, p));
        }
        {
            const CMatrix tt = random_psd(rng, n);
            const CMatrix s = tt + random_psd(rng, n);
            const double p = uniform(rng, 0.2, 4.0);
            t[1].le(norm_p(tt, p), norm_p(s, p));
        }
        {
            const CMatrix s = random_matrix(rng, n, n), u = random_matrix(rng, n, n);
            const double p = trial % 5 == 0 ? kSchattenInf : uniform(rng, 1.0, 6.0);
            t[2].le(norm_p(s + u, p), norm_p(s, p) + norm_p(u, p));
        }
        {
            const CMatrix s = random_matrix(rng, n, n), u = random_matrix(rng, n, n);
            const double p = uniform(rng, 0.1, 1.0);
            t[3].le(std::pow(norm_p(s + u, p), p), std::pow(norm_p(s, p), p) + std::pow(norm_p(u, p), p));
        }
        {
            const CMatrix s = random_psd(rng, n);
            const double p = trial == 0 ? 0.7 : uniform(rng, 0.3, 3.0);
            const double q = trial == 0 ? 1.3 : uniform(rng, 0.3, 3.0);
            t[4].eq(std::pow(norm_p(psd_power(s, p), q), q), std::pow(norm_p(psd_power(s, q), p), p));
        }
        {
            const CMatrix s = random_matrix(rng, n, random_dim(rng));
            const double p = uniform(rng, 0.3, 6.0);
            const double lhs = std::pow(norm_p(s, p), 2.0);
            t[5].eq(lhs, norm_p(s.adjoint() * s, 0.5 * p));
        }
        {
            const CMatrix s = random_matrix(rng, n, random_dim(rng));
            const double p = uniform(rng, 0.2, 6.0);
            t[6].eq(norm_p(s.adjoint(), p), norm_p(s, p));
        }
        {
            const int k = random_dim(rng);
            const CMatrix s = random_matrix(rng, n, k), u = random_matrix(rng, k, random_dim(rng));
            const double p = uniform(rng, 0.3, 6.0), q = uniform(rng, 0.3, 6.0);
            const double r = 1.0 / (1.0 / p + 1.0 / q);
            t[7].le(norm_p(s * u, r), norm_p(s, p) * norm_p(u, q));
        }
        {
            const CMatrix s = random_matrix(rng, n, random_dim(rng));
            const double p = uniform(rng, 0.3, 6.0), q = uniform(rng, 0.3, 6.0), a = uniform(rng, 0.05, 0.95);
            const double r = 1.0 / (a / p + (1.0 - a) / q);
            t[8].le(norm_p(s, r), std::pow(norm_p(s, p), a) * std::pow(norm_p(s, q), 1.0 - a));
        }
        {
            const CMatrix s = random_matrix(rng, n, random_dim(rng));
            t[9].eq(std::pow(norm_p(s, 2.0), 2.0), s.cwiseAbs2().sum());
        }
        {
            // S^* T = 0 (or S T^* = 0): ranges (or co-ranges) in complementary subspaces.
            const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
            const int other = random_dim(rng);
            const Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, n, n));
            const CMatrix q = qr.householderQ();
            CMatrix s = q.leftCols(k) * random_matrix(rng, k, other);
            CMatrix u = q.rightCols(n - k) * random_matrix(rng, n - k, other);
            if (trial % 2) {
                s = s.adjoint().eval();
                u = u.adjoint().eval();
            }
            const double p = uniform(rng, 0.2, 6.0);
            t[10].le(norm_p(s, p), norm_p(s + u, p));
        }
    }
    std::vector<PropertyCheck> out;
    for (auto& x : t) out.push_back(x.check);
    return out;
}

}  // namespace landau_ee
