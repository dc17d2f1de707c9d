#include "landau_ee/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace landau_ee {

Rule1D gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one node");
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // final derivative at converged x
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = mid;
    return rule;
}

Rule1D composite_gauss_legendre(int n, int panels, double a, double b) {
    if (panels < 1) throw DomainError("composite_gauss_legendre: need at least one panel");
    Rule1D out;
    const double h = (b - a) / panels;
    const Rule1D base = gauss_legendre(n, 0.0, h);
    for (int p = 0; p < panels; ++p) {
        const double left = a + p * h;
        for (std::size_t k = 0; k < base.size(); ++k) {
            out.nodes.push_back(left + base.nodes[k]);
            out.weights.push_back(base.weights[k]);
        }
    }
    return out;
}

namespace {

struct Segment {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod_segment(const std::function<cplx(double)>& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    static const auto& xk = GK::abscissa();
    static const auto& wk = GK::weights();
    using G = boost::math::quadrature::gauss<double, 7>;
    static const auto& wg = G::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // xk[0] = 0; the even-indexed Kronrod abscissae are the 7 Gauss nodes.
    const cplx fc = f(mid);
    cplx kron = wk[0] * fc;
    cplx gauss = wg[0] * fc;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const cplx fsum = f(mid - half * xk[i]) + f(mid + half * xk[i]);
        kron += wk[i] * fsum;
        if (i % 2 == 0) gauss += wg[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

AdaptiveQuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                      const AdaptiveQuadSpec& spec) {
    std::priority_queue<Segment> heap;
    Segment first = kronrod_segment(f, a, b);
    cplx total = first.value;
    double err = first.error;
    heap.push(first);
    int intervals = 1;
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (intervals >= spec.max_intervals) {
            std::ostringstream os;
            os << "adaptive quadrature did not converge: estimate " << err << " after " << intervals
               << " intervals (requested " << std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) << ")";
            throw AccuracyError(os.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = kronrod_segment(f, worst.a, mid);
        Segment right = kronrod_segment(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        ++intervals;
        err += left.error + right.error - worst.error;
    }
    // Re-sum values in a fixed order for reproducibility.
    std::vector<Segment> segs;
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    cplx value = 0.0;
    for (const auto& s : segs) value += s.value;
    return {value, err, intervals};
}

}  // namespace landau_ee
