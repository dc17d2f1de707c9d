#pragma once

#include <limits>
#include <string>
#include <vector>

#include "landau_ee/types.hpp"

namespace landau_ee {

/// (gamma, eps) tameness: gamma bounded derivatives, field decay (1+|x|)^{-1-eps},
/// potential decay (1+|x|)^{-eps}. n0 is the smallest integer with n0 > 1/(2 eps).
struct TamenessParams {
    int gamma = 2;
    double eps = 0.5;

    TamenessParams() = default;
    TamenessParams(int gamma, double eps);
    int n0() const;
};

enum class ProfileKind { zero, gaussian, power_law, constant };

std::string to_string(ProfileKind kind);

/// One rotationally symmetric bump about `center`:
///   gaussian:  amplitude * exp(-|x-c|^2 / width^2)
///   power_law: amplitude * (1 + |x-c|^2)^(-exponent/2)   (smooth at the centre)
///   constant:  amplitude everywhere (quadrature diagnostics only; not tame)
struct RadialProfile {
    ProfileKind kind = ProfileKind::zero;
    double amplitude = 0.0;
    double width = 1.0;
    double exponent = 2.0;
    Point center{};

    double eval(Point x) const;
    /// Flux through the disk of radius r about the centre: int_{D_r(c)} profile.
    double enclosed_flux(double r) const;
    /// A valid C with |profile(x)| (1+|x|)^kappa <= C for all x.
    double decay_bound(double kappa) const;
};

/// Magnetic perturbation B_eps as a finite sum of radial profiles.
class FieldFamily {
public:
    FieldFamily() = default;
    FieldFamily(std::vector<RadialProfile> terms, TamenessParams tameness);

    static FieldFamily zero(TamenessParams t = {});
    static FieldFamily gaussian_bump(double amplitude, double width, Point center, TamenessParams t = {});
    /// Requires exponent >= 1 + eps.
    static FieldFamily power_law(double amplitude, double exponent, Point center, TamenessParams t = {});

    double eval(Point x) const;
    /// C in |B(x)| <= C (1+|x|)^{-1-eps}.
    double decay_constant() const;
    bool is_zero() const;

    const std::vector<RadialProfile>& terms() const { return terms_; }
    const TamenessParams& tameness() const { return tameness_; }

    FieldFamily scaled(double s) const;
    FieldFamily plus(const FieldFamily& other) const;

private:
    std::vector<RadialProfile> terms_;
    TamenessParams tameness_;
};

/// Scalar potential V_eps as a finite sum of radial profiles.
class PotentialFamily {
public:
    PotentialFamily() = default;
    PotentialFamily(std::vector<RadialProfile> terms, TamenessParams tameness);

    static PotentialFamily zero(TamenessParams t = {});
    static PotentialFamily gaussian(double amplitude, double width, Point center, TamenessParams t = {});
    /// Requires exponent >= eps.
    static PotentialFamily power_law(double amplitude, double exponent, Point center, TamenessParams t = {});
    /// Constant potential; not tame. Used to diagnose quadrature (matrix must be c * identity).
    static PotentialFamily constant_for_testing(double value);

    double eval(Point x) const;
    /// C in |V(x)| <= C (1+|x|)^{-eps}; infinite for the constant diagnostic.
    double decay_constant() const;
    bool is_zero() const;

    const std::vector<RadialProfile>& terms() const { return terms_; }
    const TamenessParams& tameness() const { return tameness_; }

private:
    std::vector<RadialProfile> terms_;
    TamenessParams tameness_;
};

// ---- Coulomb gauge ------------------------------------------------------

/// Settings for the generic (field-agnostic) convolution quadrature.
struct GaugeQuadSpec {
    int nodes_per_panel = 16;
    int panels_per_segment = 4;
    int n_angular = 64;
    int max_refinements = 6;
    double tol = 1e-9;
};

struct GaugeQuadResult {
    Point value;
    double error_estimate = 0.0;
    int refinements = 0;
};

/// A_eps(x) = int B(x-y) J y / (2 pi |y|^2) dy from the enclosed-flux closed form
/// (every family here is a sum of radial terms).
Point gauge_closed_form(const FieldFamily& f, Point x);

/// The same convolution by polar quadrature centred at the kernel singularity y = 0;
/// uses only pointwise field values. Throws AccuracyError on non-convergence.
GaugeQuadResult gauge_quadrature(const FieldFamily& f, Point x, const GaugeQuadSpec& quad = {});

enum class GaugeMethod { closed_form, quadrature };

Point gauge_convolve(const FieldFamily& f, Point x, GaugeMethod method = GaugeMethod::closed_form,
                     const GaugeQuadSpec& quad = {});

struct CurlDivErrors {
    double curl_error = 0.0;  ///< curl A - B, curl oriented so that curl((B0/2) J x) = B0
    double div_error = 0.0;
};

/// Richardson-extrapolated central differences of the closed-form gauge at x.
CurlDivErrors curl_div_check(const FieldFamily& f, Point x, double h);

/// W_eps = |A_eps|^2 + V_eps
double pseudo_potential(const FieldFamily& f, const PotentialFamily& v, Point x);

/// Deterministic spiral of n points with radii spread over [r_min, r_max].
std::vector<Point> audit_points(int n, double r_min, double r_max);

}  // namespace landau_ee
