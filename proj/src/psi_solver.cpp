#include "wpt/psi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wpt {

namespace {

constexpr int kScanPoints = 2048;

struct PsiEval {
    double c;        // eta*beta0*P
    double x1, x2;   // receiver positions
    double h2;

    double value(double l1, double l2, double x) const {
        const double a = x - x1;
        const double b = x - x2;
        return l1 * c / (a * a + h2) + l2 * c / (b * b + h2);
    }
    double slope(double l1, double l2, double x) const {
        const double a = x - x1;
        const double b = x - x2;
        const double da = a * a + h2;
        const double db = b * b + h2;
        return -2.0 * c * (l1 * a / (da * da) + l2 * b / (db * db));
    }
};

PsiEval make_eval(const SystemParams& p) {
    return PsiEval{p.link_gain(), p.receiver_x(1), p.receiver_x(2), p.h_m * p.h_m};
}

}  // namespace

double psi(const SystemParams& params, double lambda1, double lambda2, double x_m) {
    return make_eval(params).value(lambda1, lambda2, x_m);
}

double psi_derivative(const SystemParams& params, double lambda1, double lambda2, double x_m) {
    return make_eval(params).slope(lambda1, lambda2, x_m);
}

SymmetricOptimum symmetric_optimum(const SystemParams& params) {
    const double h = params.h_m;
    const double d = params.d_m;
    SymmetricOptimum out;
    out.threshold_m = 2.0 * h / std::sqrt(3.0);
    if (d > out.threshold_m) {
        const double d2 = d * d;
        const double xi2 = std::sqrt(d2 * d2 / 4.0 + h * h * d2) - (d2 / 4.0 + h * h);
        out.xi_m = std::sqrt(std::max(0.0, xi2));
    }
    return out;
}

PsiMaxResult maximize_psi(const SystemParams& params, double lambda1, double lambda2) {
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) {
        throw std::invalid_argument("psi weights must be nonnegative");
    }
    if (lambda1 + lambda2 <= 0.0) {
        throw std::invalid_argument("at least one psi weight must be positive");
    }
    params.validate();

    const PsiEval eval = make_eval(params);
    const double lo = -params.d_m / 2.0;
    const double hi = params.d_m / 2.0;

    std::vector<double> candidates{lo, hi};
    if (lo < 0.0 && hi > 0.0) candidates.push_back(0.0);

    if (hi > lo) {
        const double step = (hi - lo) / (kScanPoints - 1);
        const double width_tol = std::max(1e-12 * params.d_m, 1e-15);
        double xa = lo;
        double fa = eval.slope(lambda1, lambda2, xa);
        for (int i = 1; i < kScanPoints; ++i) {
            const double xb = (i == kScanPoints - 1) ? hi : lo + i * step;
            const double fb = eval.slope(lambda1, lambda2, xb);
            if (fa == 0.0) candidates.push_back(xa);
            if (fa * fb < 0.0) {
                // Bisection is unconditionally robust on a bracketed sign change.
                double a = xa, b = xb, va = fa;
                while (b - a > width_tol) {
                    const double m = 0.5 * (a + b);
                    const double vm = eval.slope(lambda1, lambda2, m);
                    if (vm == 0.0) {
                        a = b = m;
                        break;
                    }
                    if (va * vm < 0.0) {
                        b = m;
                    } else {
                        a = m;
                        va = vm;
                    }
                }
                candidates.push_back(0.5 * (a + b));
            }
            xa = xb;
            fa = fb;
        }
        if (fa == 0.0) candidates.push_back(xa);
    }

    // Merge near-duplicates, keeping the best evaluation per cluster; ties
    // prefer the candidate closest to the center.
    std::sort(candidates.begin(), candidates.end());
    const double merge_tol = 1e-9 * std::max(params.d_m, 1.0);
    std::vector<std::pair<double, double>> scored;  // (x, psi)
    for (double x : candidates) {
        const double v = eval.value(lambda1, lambda2, x);
        if (!scored.empty() && x - scored.back().first <= merge_tol) {
            auto& [bx, bv] = scored.back();
            if (v > bv || (v == bv && std::abs(x) < std::abs(bx))) {
                bx = x;
                bv = v;
            }
        } else {
            scored.emplace_back(x, v);
        }
    }

    double best = scored.front().second;
    for (const auto& [x, v] : scored) best = std::max(best, v);

    PsiMaxResult out;
    out.value_w = best;
    for (const auto& [x, v] : scored) {
        if (best - v <= 1e-10 * best) out.maximizers.push_back(x);
    }
    return out;
}

}  // namespace wpt
