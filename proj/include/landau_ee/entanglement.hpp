#pragma once

#include <string>
#include <vector>

#include "landau_ee/assembly.hpp"
#include "landau_ee/fields.hpp"
#include "landau_ee/special.hpp"
#include "landau_ee/spectral.hpp"

namespace landau_ee {

struct ClipTolerances {
    double clip = 1e-8;   ///< values this far outside [0,1] are clamped silently
    double error = 1e-6;  ///< beyond this the truncation is declared inadequate
};

/// Eigenvalues of 1_{L Lambda} P 1_{L Lambda} restricted to range(P).
struct EntanglementSpectrum {
    std::vector<double> lambdas;  ///< clamped to [0,1], descending
    int clip_count = 0;           ///< values that were further than clip tolerance outside [0,1]
    double trace = 0.0;           ///< trace before clamping
    double min_raw = 0.0;
    double max_raw = 0.0;
};

/// Spectrum of C* O C for an orthonormal frame C of the occupied space.
EntanglementSpectrum entanglement_spectrum(const CMatrix& frame, const CMatrix& overlap, const ClipTolerances& tol = {});
/// Same, with the frame extracted from a projection matrix (eigenvectors with eigenvalue > 1/2).
EntanglementSpectrum entanglement_spectrum_from_projection(const CMatrix& pi, const CMatrix& overlap,
                                                           const ClipTolerances& tol = {});

enum class HamiltonianTag { unperturbed, perturbed };
std::string to_string(HamiltonianTag tag);

struct EntropyResult {
    double L = 0.0;
    double alpha = 1.0;
    double S = 0.0;
    double S_dual = 0.0;  ///< sum g_alpha(4 lambda (1 - lambda))
    HamiltonianTag tag = HamiltonianTag::unperturbed;
};

inline constexpr double kDualFormulaTolerance = 1e-10;

/// S = sum_k h_alpha(lambda_k); cross-checked against the g-route (AccuracyError on mismatch).
EntropyResult local_entropy(const EntanglementSpectrum& es, RenyiOrder alpha, double L = 0.0,
                            HamiltonianTag tag = HamiltonianTag::unperturbed);

/// |1_{L Lambda^c} P 1_{L Lambda}|_p^p = sum_k (lambda_k (1 - lambda_k))^{p/2}.
double cross_schatten_from_spectrum(const EntanglementSpectrum& es, double p);

/// |O (Pi_pert - Pi_unpert) (I - O)|_p^p by SVD.
double difference_cross_norm(const CMatrix& pi_unpert, const CMatrix& pi_pert, const CMatrix& overlap, double p);

struct ScanSpec {
    double B0 = 1.0;
    FieldFamily field;
    PotentialFamily potential;
    RegionSpec region;
    TruncationPolicy truncation;
    std::vector<double> L_grid;
    std::vector<double> alphas;
    Interval window{0.5, 2.0};
    std::vector<double> p_values{1.0};
    ClipTolerances clip;
    AssemblyTolerances assembly;
    /// Endpoint tolerance relative to B0 (absolute floor 1e-12 |H| is added by the projection).
    double endpoint_gap = 1e-8;
    double angular_offset = 0.0;
    int jobs = 0;
};

struct ScanRow {
    double L = 0.0;
    double alpha = 1.0;
    double S_unpert = 0.0;
    double S_pert = 0.0;
    std::vector<double> cross;  ///< per p, from the perturbed projection
    std::vector<double> diff;   ///< per p
};

/// Per-L diagnostics (same for every alpha).
struct ScanDiagnostics {
    double L = 0.0;
    int l_max = 0;
    int m_max = 0;
    int rank_unpert = 0;
    int rank_pert = 0;
    int clip_count = 0;
    double heps_asymmetry = 0.0;
};

struct ScanTable {
    std::vector<double> p_values;
    std::vector<ScanRow> rows;  ///< L-major, alpha-minor
    std::vector<ScanDiagnostics> diagnostics;

    std::vector<double> Ls() const;
    std::vector<double> alphas() const;
    /// Column for one alpha: "S_unpert", "S_pert", "cross_p<p>", "diff_p<p>".
    std::vector<double> column(const std::string& name, double alpha) const;
    std::vector<std::string> column_names() const;
};

ScanTable area_law_scan(const ScanSpec& spec);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    int points = 0;
};

/// Ordinary least squares y = slope x + intercept; needs >= 3 points with distinct x.
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

/// Fit of column(name, alpha) against L over the `window` largest L (0 = all).
LinearFit fit_slope(const ScanTable& table, const std::string& column, double alpha, int window = 0);

enum class NormKind { same, difference };

/// Least-squares slope of log(norm^p) against log L over the `window` largest L.
double pnorm_scaling_exponent(const ScanTable& table, NormKind which, double p, int window = 0);

/// p rendered for column names: shortest round-trip decimal.
std::string format_p(double p);

}  // namespace landau_ee
