#pragma once

#include <array>
#include <optional>

#include "wpt/model.hpp"
#include "wpt/psi_solver.hpp"

namespace wpt {

// A point of the dual feasible set: lambda >= 0 with
// alpha1*lambda1 + alpha2*lambda2 = 1. The dual function is finite exactly
// on that line, so the search space is one-dimensional.
struct DualPoint {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
};

// Builds the dual point on the constraint line from the free parameter
// lambda1 (requires alpha2 > 0).
DualPoint dual_point_on_line(const EnergyProfile& profile, double lambda1);

bool on_dual_line(const EnergyProfile& profile, const DualPoint& dp, double tol = 1e-12);

struct DualEval {
    double value_j = 0.0;       // T * max_x psi(x)
    PsiMaxResult maximizers;    // kept for primal recovery
};

// Dual function of the speed-unconstrained problem. On the constraint line
// the energy subproblem contributes zero, leaving T times the pointwise
// maximum of psi.
DualEval dual_function(const SystemParams& params, const DualPoint& dp);

// Subgradient of the dual at dp for a chosen maximizer of psi:
// [T*Q1(x*), T*Q2(x*)] (the free energy term is fixed at zero).
std::array<double, 2> dual_subgradient(const SystemParams& params, const DualPoint& dp,
                                       double maximizer_x);

// Minimizes the dual over the line {lambda >= 0, alpha.lambda = 1} by
// golden-section search on lambda1 in [0, 1/alpha1]; the restriction of a
// pointwise maximum of linear functions to a line is convex, hence unimodal.
// Zero-weight profiles short-circuit to the analytically forced vertex.
DualPoint solve_dual(const SystemParams& params, const EnergyProfile& profile);

// Pareto-optimal solution of the speed-unconstrained problem for one energy
// profile. Either a single hover (hover position x*, energies T*Q_k(x*)) or,
// when the dual ties at equal weights above the separation threshold, a
// two-hover time share at -xi / +xi with split tau chosen so the energy
// ratio matches the profile. The two-hover trajectory jumps between hover
// points, which is admissible only because this problem ignores the speed
// limit.
struct P2Solution {
    Trajectory trajectory;
    EnergyPair energies;
    DualPoint dual;
    std::optional<double> tau_s;  // first-hover duration in the time-share case
    // Value of the optimization problem: min over supported k of E_k/alpha_k.
    // Coincides with total energy whenever the ratio constraint binds.
    double objective_j = 0.0;
};

P2Solution solve_p2(const SystemParams& params, const EnergyProfile& profile);

}  // namespace wpt
