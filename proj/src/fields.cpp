#include "landau_ee/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau_ee/quadrature.hpp"

namespace landau_ee {

TamenessParams::TamenessParams(int gamma_, double eps_) : gamma(gamma_), eps(eps_) {
    if (gamma_ < 0) throw ValidationError("tameness: gamma must be a natural number");
    if (!(eps_ > 0.0 && eps_ < 1.0)) {
        std::ostringstream os;
        os << "tameness: eps must lie in (0,1), got " << eps_ << " (the gauge only decays like (1+|x|)^{-eps} for eps < 1)";
        throw ValidationError(os.str());
    }
}

int TamenessParams::n0() const { return static_cast<int>(std::floor(1.0 / (2.0 * eps))) + 1; }

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::zero: return "zero";
        case ProfileKind::gaussian: return "gaussian";
        case ProfileKind::power_law: return "power_law";
        case ProfileKind::constant: return "constant";
    }
    return "unknown";
}

// ---- RadialProfile -------------------------------------------------------

double RadialProfile::eval(Point x) const {
    switch (kind) {
        case ProfileKind::zero: return 0.0;
        case ProfileKind::gaussian: return amplitude * std::exp(-norm2(x - center) / (width * width));
        case ProfileKind::power_law: return amplitude * std::pow(1.0 + norm2(x - center), -0.5 * exponent);
        case ProfileKind::constant: return amplitude;
    }
    return 0.0;
}

double RadialProfile::enclosed_flux(double r) const {
    const double r2 = r * r;
    switch (kind) {
        case ProfileKind::zero: return 0.0;
        case ProfileKind::gaussian: return -amplitude * kPi * width * width * std::expm1(-r2 / (width * width));
        case ProfileKind::power_law: {
            const double e = 1.0 - 0.5 * exponent;
            if (std::abs(e) < 1e-14) return amplitude * kPi * std::log1p(r2);
            return 2.0 * kPi * amplitude / (2.0 - exponent) * std::expm1(e * std::log1p(r2));
        }
        case ProfileKind::constant: return amplitude * kPi * r2;
    }
    return 0.0;
}

double RadialProfile::decay_bound(double kappa) const {
    const double a = 1.0 + std::sqrt(norm2(center));
    switch (kind) {
        case ProfileKind::zero: return 0.0;
        case ProfileKind::gaussian: {
            // sup_u (a+u)^kappa exp(-u^2/w^2), attained at the positive root of 2u(a+u) = kappa w^2
            const double u = 0.5 * (-a + std::sqrt(a * a + 2.0 * kappa * width * width));
            return std::abs(amplitude) * std::pow(a + u, kappa) * std::exp(-u * u / (width * width));
        }
        case ProfileKind::power_law:
            if (exponent < kappa) return std::numeric_limits<double>::infinity();
            return std::abs(amplitude) * std::pow(a, kappa) * std::pow(2.0, 0.5 * exponent);
        case ProfileKind::constant:
            return amplitude == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

namespace {

void validate_terms(const std::vector<RadialProfile>& terms, double min_exponent, const char* what) {
    for (const auto& t : terms) {
        if (!std::isfinite(t.amplitude)) throw ValidationError(std::string(what) + ": amplitude must be finite");
        if (t.kind == ProfileKind::gaussian && !(t.width > 0.0))
            throw ValidationError(std::string(what) + ": gaussian width must be positive");
        if (t.kind == ProfileKind::power_law && !(t.exponent >= min_exponent)) {
            std::ostringstream os;
            os << what << ": power-law exponent " << t.exponent << " below required decay " << min_exponent;
            throw ValidationError(os.str());
        }
    }
}

}  // namespace

// ---- FieldFamily --------------------------------------------------------

FieldFamily::FieldFamily(std::vector<RadialProfile> terms, TamenessParams tameness)
    : terms_(std::move(terms)), tameness_(tameness) {
    for (const auto& t : terms_) {
        if (t.kind == ProfileKind::constant) throw ValidationError("field family: constant profile is not admissible");
    }
    validate_terms(terms_, 1.0 + tameness_.eps, "field family");
}

FieldFamily FieldFamily::zero(TamenessParams t) { return FieldFamily({}, t); }

FieldFamily FieldFamily::gaussian_bump(double amplitude, double width, Point center, TamenessParams t) {
    return FieldFamily({RadialProfile{ProfileKind::gaussian, amplitude, width, 0.0, center}}, t);
}

FieldFamily FieldFamily::power_law(double amplitude, double exponent, Point center, TamenessParams t) {
    return FieldFamily({RadialProfile{ProfileKind::power_law, amplitude, 1.0, exponent, center}}, t);
}

double FieldFamily::eval(Point x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.eval(x);
    return s;
}

double FieldFamily::decay_constant() const {
    double c = 0.0;
    for (const auto& t : terms_) c += t.decay_bound(1.0 + tameness_.eps);
    return c;
}

bool FieldFamily::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const RadialProfile& t) { return t.kind == ProfileKind::zero || t.amplitude == 0.0; });
}

FieldFamily FieldFamily::scaled(double s) const {
    auto terms = terms_;
    for (auto& t : terms) t.amplitude *= s;
    return FieldFamily(std::move(terms), tameness_);
}

FieldFamily FieldFamily::plus(const FieldFamily& other) const {
    auto terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return FieldFamily(std::move(terms), tameness_);
}

// ---- PotentialFamily ----------------------------------------------------

PotentialFamily::PotentialFamily(std::vector<RadialProfile> terms, TamenessParams tameness)
    : terms_(std::move(terms)), tameness_(tameness) {
    validate_terms(terms_, tameness_.eps, "potential family");
}

PotentialFamily PotentialFamily::zero(TamenessParams t) { return PotentialFamily({}, t); }

PotentialFamily PotentialFamily::gaussian(double amplitude, double width, Point center, TamenessParams t) {
    return PotentialFamily({RadialProfile{ProfileKind::gaussian, amplitude, width, 0.0, center}}, t);
}

PotentialFamily PotentialFamily::power_law(double amplitude, double exponent, Point center, TamenessParams t) {
    return PotentialFamily({RadialProfile{ProfileKind::power_law, amplitude, 1.0, exponent, center}}, t);
}

PotentialFamily PotentialFamily::constant_for_testing(double value) {
    return PotentialFamily({RadialProfile{ProfileKind::constant, value, 1.0, 0.0, {}}}, {});
}

double PotentialFamily::eval(Point x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.eval(x);
    return s;
}

double PotentialFamily::decay_constant() const {
    double c = 0.0;
    for (const auto& t : terms_) c += t.decay_bound(tameness_.eps);
    return c;
}

bool PotentialFamily::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const RadialProfile& t) { return t.kind == ProfileKind::zero || t.amplitude == 0.0; });
}

// ---- gauge --------------------------------------------------------------

Point gauge_closed_form(const FieldFamily& f, Point x) {
    Point a{};
    for (const auto& t : f.terms()) {
        if (t.kind == ProfileKind::zero) continue;
        const Point d = x - t.center;
        const double r2 = norm2(d);
        if (r2 == 0.0) continue;
        const double s = t.enclosed_flux(std::sqrt(r2)) / (2.0 * kPi * r2);
        a = a + s * apply_j(d);
    }
    return a;
}

namespace {

struct RadialSegment {
    double lo, hi;  // hi = inf marks the algebraic tail
};

// Breakpoints around each term's ring |y| = |x - c| where the integrand concentrates.
std::vector<RadialSegment> radial_segments(const FieldFamily& f, Point x, double& tail_exponent) {
    std::vector<double> cuts{0.0};
    tail_exponent = 0.0;
    double reach = 0.0;
    for (const auto& t : f.terms()) {
        const double d = std::sqrt(norm2(x - t.center));
        const double w = t.kind == ProfileKind::gaussian ? t.width : 1.0;
        for (double c : {d - 6.0 * w, d - 2.0 * w, d, d + 2.0 * w, d + 6.0 * w}) {
            if (c > 0.0) cuts.push_back(c);
        }
        if (t.kind == ProfileKind::gaussian) reach = std::max(reach, d + 9.0 * w);
        if (t.kind == ProfileKind::power_law) {
            reach = std::max(reach, d + 6.0);
            tail_exponent = tail_exponent == 0.0 ? t.exponent : std::min(tail_exponent, t.exponent);
        }
    }
    cuts.push_back(reach);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-12; }), cuts.end());
    std::vector<RadialSegment> segs;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) segs.push_back({cuts[i], cuts[i + 1]});
    if (tail_exponent > 0.0) segs.push_back({cuts.back(), std::numeric_limits<double>::infinity()});
    return segs;
}

Point gauge_quadrature_once(const FieldFamily& f, Point x, const std::vector<RadialSegment>& segs,
                            double tail_exponent, int nodes, int panels, int n_angular) {
    // Radial nodes (after any tail substitution) with Jacobian folded into the weight.
    std::vector<double> rho, w;
    for (const auto& s : segs) {
        if (std::isfinite(s.hi)) {
            const Rule1D r = composite_gauss_legendre(nodes, panels, s.lo, s.hi);
            rho.insert(rho.end(), r.nodes.begin(), r.nodes.end());
            w.insert(w.end(), r.weights.begin(), r.weights.end());
        } else {
            // rho = lo * v^{-beta}, beta = 1/(s-1): integrand ~ rho^{-s} becomes smooth in v.
            const double beta = 1.0 / (tail_exponent - 1.0);
            const Rule1D r = composite_gauss_legendre(nodes, panels, 0.0, 1.0);
            for (std::size_t k = 0; k < r.size(); ++k) {
                const double v = r.nodes[k];
                rho.push_back(s.lo * std::pow(v, -beta));
                w.push_back(r.weights[k] * beta * s.lo * std::pow(v, -beta - 1.0));
            }
        }
    }
    double ax = 0.0, ay = 0.0;
    const double dphi = 2.0 * kPi / n_angular;
    for (int j = 0; j < n_angular; ++j) {
        const double phi = (j + 0.5) * dphi;
        const Point e{std::cos(phi), std::sin(phi)};
        double radial = 0.0;
        for (std::size_t k = 0; k < rho.size(); ++k) radial += w[k] * f.eval(x - rho[k] * e);
        const Point je = apply_j(e);
        ax += radial * je.x;
        ay += radial * je.y;
    }
    const double s = dphi / (2.0 * kPi);
    return {s * ax, s * ay};
}

}  // namespace

GaugeQuadResult gauge_quadrature(const FieldFamily& f, Point x, const GaugeQuadSpec& quad) {
    if (f.is_zero()) return {{0.0, 0.0}, 0.0, 0};
    double tail_exponent = 0.0;
    const auto segs = radial_segments(f, x, tail_exponent);
    if (tail_exponent > 0.0 && tail_exponent <= 1.0) throw DomainError("gauge_quadrature: field decays too slowly");
    int nodes = quad.nodes_per_panel, panels = quad.panels_per_segment, nang = quad.n_angular;
    Point prev = gauge_quadrature_once(f, x, segs, tail_exponent, nodes, panels, nang);
    double err = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= quad.max_refinements; ++it) {
        panels *= 2;
        nang *= 2;
        const Point cur = gauge_quadrature_once(f, x, segs, tail_exponent, nodes, panels, nang);
        err = std::sqrt(norm2(cur - prev));
        if (err <= quad.tol * std::max(1.0, std::sqrt(norm2(cur)))) return {cur, err, it};
        prev = cur;
    }
    std::ostringstream os;
    os << "gauge quadrature did not converge at (" << x.x << ", " << x.y << "): last change " << err;
    throw AccuracyError(os.str());
}

Point gauge_convolve(const FieldFamily& f, Point x, GaugeMethod method, const GaugeQuadSpec& quad) {
    if (method == GaugeMethod::quadrature) return gauge_quadrature(f, x, quad).value;
    return gauge_closed_form(f, x);
}

CurlDivErrors curl_div_check(const FieldFamily& f, Point x, double h) {
    if (!(h > 0.0)) throw DomainError("curl_div_check: step must be positive");
    // Jacobian entries d_j A_i by Richardson-extrapolated central differences.
    auto central = [&](Point dir, double step) {
        const Point p = gauge_closed_form(f, x + step * dir);
        const Point m = gauge_closed_form(f, x - step * dir);
        return (1.0 / (2.0 * step)) * (p - m);
    };
    auto deriv = [&](Point dir) {
        const Point coarse = central(dir, h);
        const Point fine = central(dir, 0.5 * h);
        return (1.0 / 3.0) * (4.0 * fine - coarse);
    };
    const Point d1 = deriv({1.0, 0.0});  // (d1 A1, d1 A2)
    const Point d2 = deriv({0.0, 1.0});  // (d2 A1, d2 A2)
    const double curl = d2.x - d1.y;
    const double div = d1.x + d2.y;
    return {curl - f.eval(x), div};
}

double pseudo_potential(const FieldFamily& f, const PotentialFamily& v, Point x) {
    return norm2(gauge_closed_form(f, x)) + v.eval(x);
}

std::vector<Point> audit_points(int n, double r_min, double r_max) {
    std::vector<Point> pts;
    pts.reserve(n);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double frac = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
        const double r = r_min * std::pow(r_max / r_min, frac);
        pts.push_back({r * std::cos(golden * k), r * std::sin(golden * k)});
    }
    return pts;
}

}  // namespace landau_ee
