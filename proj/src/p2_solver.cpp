#include "wpt/p2_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wpt/errors.hpp"

namespace wpt {

namespace {

constexpr double kLineParamTol = 1e-9;   // golden-section width on lambda1
constexpr int kGoldenMaxIters = 200;
constexpr double kLambdaEqualRelTol = 1e-6;
constexpr double kFairnessRelTol = 1e-5;  // post-clamp re-verification

double objective_value(const EnergyProfile& profile, const EnergyPair& e) {
    double value = std::numeric_limits<double>::infinity();
    if (profile.alpha1 > 0.0) value = std::min(value, e.e1_j / profile.alpha1);
    if (profile.alpha2 > 0.0) value = std::min(value, e.e2_j / profile.alpha2);
    return value;
}

}  // namespace

DualPoint dual_point_on_line(const EnergyProfile& profile, double lambda1) {
    if (profile.alpha2 <= 0.0) {
        throw std::invalid_argument("dual line parametrization needs alpha2 > 0");
    }
    return DualPoint{lambda1, (1.0 - profile.alpha1 * lambda1) / profile.alpha2};
}

bool on_dual_line(const EnergyProfile& profile, const DualPoint& dp, double tol) {
    if (dp.lambda1 < 0.0 || dp.lambda2 < 0.0) return false;
    return std::abs(profile.alpha1 * dp.lambda1 + profile.alpha2 * dp.lambda2 - 1.0) <= tol;
}

DualEval dual_function(const SystemParams& params, const DualPoint& dp) {
    DualEval out;
    out.maximizers = maximize_psi(params, dp.lambda1, dp.lambda2);
    out.value_j = params.t_s * out.maximizers.value_w;
    return out;
}

std::array<double, 2> dual_subgradient(const SystemParams& params, const DualPoint& /*dp*/,
                                       double maximizer_x) {
    return {params.t_s * harvested_power(params, maximizer_x, 1),
            params.t_s * harvested_power(params, maximizer_x, 2)};
}

DualPoint solve_dual(const SystemParams& params, const EnergyProfile& profile) {
    params.validate();
    // A zero-weight receiver turns the line into a ray along its own
    // multiplier, on which the dual is monotone; the vertex is forced.
    if (profile.alpha2 <= 0.0) return DualPoint{1.0 / profile.alpha1, 0.0};
    if (profile.alpha1 <= 0.0) return DualPoint{0.0, 1.0 / profile.alpha2};

    const auto g = [&](double u) {
        return dual_function(params, dual_point_on_line(profile, u)).value_j;
    };

    double lo = 0.0;
    double hi = 1.0 / profile.alpha1;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double m1 = hi - inv_phi * (hi - lo);
    double m2 = lo + inv_phi * (hi - lo);
    double f1 = g(m1);
    double f2 = g(m2);
    for (int it = 0; it < kGoldenMaxIters && hi - lo > kLineParamTol; ++it) {
        if (f1 <= f2) {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - inv_phi * (hi - lo);
            f1 = g(m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + inv_phi * (hi - lo);
            f2 = g(m2);
        }
    }
    const double u = 0.5 * (lo + hi);
    return dual_point_on_line(profile, std::clamp(u, 0.0, 1.0 / profile.alpha1));
}

P2Solution solve_p2(const SystemParams& params, const EnergyProfile& profile) {
    params.validate();

    P2Solution sol;

    // Zero-weight profiles bypass the dual: the binding receiver alone
    // decides, and hovering straight above it is optimal.
    if (profile.alpha1 <= 0.0 || profile.alpha2 <= 0.0) {
        const int k = profile.alpha1 > 0.0 ? 1 : 2;
        sol.trajectory = Trajectory::hover(params.receiver_x(k), params.t_s);
        sol.energies = trajectory_energies(params, sol.trajectory);
        sol.dual = k == 1 ? DualPoint{1.0, 0.0} : DualPoint{0.0, 1.0};
        sol.objective_j = objective_value(profile, sol.energies);
        return sol;
    }

    sol.dual = solve_dual(params, profile);
    const double lsum = sol.dual.lambda1 + sol.dual.lambda2;
    const bool lambdas_equal =
        std::abs(sol.dual.lambda1 - sol.dual.lambda2) <= kLambdaEqualRelTol * lsum;
    const SymmetricOptimum sym = symmetric_optimum(params);

    if (lambdas_equal && sym.xi_m) {
        // Equal multipliers above the threshold: time-share between the two
        // symmetric maximizers -xi and +xi so the ratio constraint binds.
        const double xi = *sym.xi_m;
        const double q_near = harvested_power(params, -xi, 1);  // Q1(-xi) = Q2(+xi)
        const double q_far = harvested_power(params, xi, 1);    // Q1(+xi) = Q2(-xi)
        const double tau_raw =
            params.t_s * (profile.alpha1 * q_near - profile.alpha2 * q_far) / (q_near - q_far);
        const double tau = std::clamp(tau_raw, 0.0, params.t_s);

        if (tau <= 0.0) {
            sol.trajectory = Trajectory::hover(xi, params.t_s);
        } else if (tau >= params.t_s) {
            sol.trajectory = Trajectory::hover(-xi, params.t_s);
        } else {
            sol.trajectory.segments = {Hover{-xi, tau}, Hover{xi, params.t_s - tau}};
        }
        sol.energies = trajectory_energies(params, sol.trajectory);
        sol.tau_s = tau;

        const double imbalance =
            std::abs(profile.alpha2 * sol.energies.e1_j - profile.alpha1 * sol.energies.e2_j);
        if (imbalance > kFairnessRelTol * sol.energies.total_j()) {
            throw solver_error(
                "time-share split failed to meet the energy ratio after clamping; "
                "relative imbalance " +
                std::to_string(imbalance / sol.energies.total_j()));
        }
        sol.objective_j = objective_value(profile, sol.energies);
        return sol;
    }

    // Unequal multipliers (or below-threshold geometry): the maximizer of psi
    // at the dual optimum is unique and a single hover there is optimal.
    const PsiMaxResult& m = dual_function(params, sol.dual).maximizers;
    double x_star = m.maximizers.front();
    if (m.maximizers.size() > 1) {
        // Only possible at a near-tie; pick the side the larger weight favors.
        x_star = sol.dual.lambda1 >= sol.dual.lambda2 ? m.maximizers.front()
                                                      : m.maximizers.back();
    }
    sol.trajectory = Trajectory::hover(x_star, params.t_s);
    sol.energies = trajectory_energies(params, sol.trajectory);
    sol.objective_j = objective_value(profile, sol.energies);
    return sol;
}

}  // namespace wpt
