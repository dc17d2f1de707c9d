#pragma once

#include <functional>
#include <vector>

#include "landau_ee/types.hpp"

namespace landau_ee {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);

/// `panels` equal sub-intervals of [a, b], each with an n-point Gauss-Legendre rule.
Rule1D composite_gauss_legendre(int n, int panels, double a, double b);

/// Settings for adaptive Gauss-Kronrod integration.
struct AdaptiveQuadSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 2000;
};

struct AdaptiveQuadResult {
    cplx value;
    double error_estimate;
    int intervals;
};

/// Adaptive 7/15-point Gauss-Kronrod on [a, b] for complex integrands.
/// Throws AccuracyError (with the achieved estimate) if the budget runs out.
AdaptiveQuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                                      const AdaptiveQuadSpec& spec = {});

}  // namespace landau_ee
