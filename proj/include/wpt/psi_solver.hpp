#pragma once

#include <optional>
#include <vector>

#include "wpt/model.hpp"

namespace wpt {

// Weighted instantaneous power psi(x) = lambda1*Q1(x) + lambda2*Q2(x).
double psi(const SystemParams& params, double lambda1, double lambda2, double x_m);

// d(psi)/dx in closed form: -2*eta*beta0*P * sum_k lambda_k (x - x_k) / ((x - x_k)^2 + h^2)^2.
// Its numerator is a quintic, so psi has at most five stationary points.
double psi_derivative(const SystemParams& params, double lambda1, double lambda2, double x_m);

// Equal-weight structure of psi. Below the separation threshold 2h/sqrt(3)
// the unique maximizer is x = 0; above it the maximizers are +-xi with
// xi^2 = sqrt(d^4/4 + h^2 d^2) - (d^2/4 + h^2), the positive root of the
// quartic factor x^4 + 2(d^2/4 + h^2) x^2 - 3 d^4/16 + h^4 - h^2 d^2 / 2
// of the equal-weight derivative.
struct SymmetricOptimum {
    double threshold_m = 0.0;       // 2h/sqrt(3)
    std::optional<double> xi_m;     // present iff d > threshold
};

SymmetricOptimum symmetric_optimum(const SystemParams& params);

// All global maximizers of psi over [-d/2, d/2], in increasing order. The
// equal-weight case above the threshold yields two; every other case one.
struct PsiMaxResult {
    std::vector<double> maximizers;
    double value_w = 0.0;
};

// Requires lambda1, lambda2 >= 0 and lambda1 + lambda2 > 0. Stationary
// points are isolated by a sign-change scan of psi' (2048 samples) with
// bisection refinement; interval endpoints and x = 0 always compete.
PsiMaxResult maximize_psi(const SystemParams& params, double lambda1, double lambda2);

}  // namespace wpt
