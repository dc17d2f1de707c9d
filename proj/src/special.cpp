#include "landau_ee/special.hpp"

#include <cmath>
#include <string>

namespace landau_ee {

RenyiOrder::RenyiOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("Renyi order must be a positive finite number, got " + std::to_string(alpha));
    }
}

double laguerre_eval(int l, double t) {
    if (l < 0) throw DomainError("laguerre_eval: negative degree");
    return assoc_laguerre(l, 0.0, t);
}

double assoc_laguerre(int n, double alpha, double t) {
    if (n < 0) throw DomainError("assoc_laguerre: negative degree");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - t;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - t) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_genfun(double s, double t) {
    if (!(t > -1.0 && t < 1.0)) {
        throw DomainError("laguerre_genfun: generating parameter must lie in (-1,1), got " + std::to_string(t));
    }
    if (s < 0.0) throw DomainError("laguerre_genfun: argument must be non-negative");
    return std::exp(-t * s / (1.0 - t)) / (1.0 - t);
}

double clip_unit(double x, const char* what) {
    if (std::isnan(x) || x < -kUnitClipTolerance || x > 1.0 + kUnitClipTolerance) {
        throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [0,1]");
    }
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

namespace {

// h_alpha evaluated at the smaller of the pair (x, 1-x); y in [0, 1/2].
double renyi_h_small(double a, double y) {
    if (y <= 0.0) return 0.0;
    const double z = 1.0 - y;
    double h;
    if (a == 1.0) {
        h = -y * std::log(y) - z * std::log1p(-y);
    } else {
        // x^a + (1-x)^a = 1 + [x^a + expm1(a log1p(-x))]
        const double s = std::pow(y, a) + std::expm1(a * std::log1p(-y));
        h = std::log1p(s) / (1.0 - a);
    }
    if (h < 1e-300) return 0.0;
    return h;
}

}  // namespace

double renyi_h(RenyiOrder alpha, double x) {
    x = clip_unit(x, "renyi_h");
    const double y = x <= 0.5 ? x : 1.0 - x;
    return renyi_h_small(alpha.value(), y);
}

double g_of_t(RenyiOrder alpha, double t) {
    t = clip_unit(t, "g_of_t");
    // (1 - sqrt(1-t))/2 without cancellation for small t
    const double x = 0.5 * t / (1.0 + std::sqrt(1.0 - t));
    return renyi_h_small(alpha.value(), x);
}

}  // namespace landau_ee
