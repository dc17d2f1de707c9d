#pragma once

#include "landau_ee/types.hpp"

namespace landau_ee {

/// Order of a Renyi entropy; always strictly positive.
class RenyiOrder {
public:
    explicit RenyiOrder(double alpha);
    double value() const { return alpha_; }
    bool is_shannon() const { return alpha_ == 1.0; }

private:
    double alpha_;
};

/// Inputs this close outside [0,1] are clamped; further out is a DomainError.
inline constexpr double kUnitClipTolerance = 1e-8;

/// Laguerre polynomial L_l(t), three-term recurrence.
double laguerre_eval(int l, double t);

/// Associated Laguerre polynomial L_n^{(alpha)}(t), three-term recurrence.
double assoc_laguerre(int n, double alpha, double t);

/// sum_l t^l L_l(s) = exp(-t s / (1 - t)) / (1 - t); requires |t| < 1.
double laguerre_genfun(double s, double t);

/// Binary Renyi entropy h_alpha(x) (Shannon for alpha = 1), natural log.
double renyi_h(RenyiOrder alpha, double x);

/// g_alpha(t) = h_alpha((1 - sqrt(1 - t)) / 2), so that g(4x(1-x)) = h(x).
double g_of_t(RenyiOrder alpha, double t);

/// Clamp x into [0,1] if it is within kUnitClipTolerance, else throw.
double clip_unit(double x, const char* what);

}  // namespace landau_ee
