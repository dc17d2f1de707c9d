#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "landau_ee/types.hpp"

namespace landau_ee {

inline constexpr double kSchattenInf = std::numeric_limits<double>::infinity();

struct SchattenReport {
    double p = 0.0;
    double value = 0.0;
    RVector singular_values;  ///< descending
};

/// Singular values, descending.
RVector singular_values(const CMatrix& m);

/// sum_k s_k^p for finite p > 0 (log-space for p < 1, where values below s_1 n eps count as zero).
double schatten_power(const RVector& s, double p);

/// (sum_k s_k^p)^{1/p}; p = infinity gives s_1. Throws DomainError for p <= 0.
SchattenReport schatten_from_singular_values(RVector s, double p);
SchattenReport schatten_pnorm(const CMatrix& m, double p);

struct PropertyCheck {
    std::string name;
    int trials = 0;
    int failures = 0;
    /// Smallest observed (rhs - lhs) / scale; negative beyond -tolerance is a failure.
    double worst_slack = std::numeric_limits<double>::infinity();
    bool passed() const { return failures == 0; }
};

/// Checks the standard Schatten inequalities and identities on random complex matrices
/// (dimensions 5..40). Failures are counted, never thrown.
std::vector<PropertyCheck> schatten_property_suite(std::uint64_t seed, int trials, double tolerance = 1e-9);

}  // namespace landau_ee
