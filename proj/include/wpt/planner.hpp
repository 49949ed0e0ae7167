#pragma once

#include <optional>

#include "wpt/model.hpp"
#include "wpt/p2_solver.hpp"

namespace wpt {

// Hover-fly-hover template: hover at x1 for t_hover1, fly to x2 at the speed
// limit, hover at x2 for the remaining time. x1 == x2 degenerates to a
// single hover.
struct HoverFlyHoverPlan {
    double x1_m = 0.0;
    double x2_m = 0.0;
    double t_hover1_s = 0.0;
};

// Materializes the plan; zero-duration pieces are dropped. Requires a
// bounded positive speed limit whenever x2 > x1.
Trajectory plan_trajectory(const SystemParams& params, const HoverFlyHoverPlan& plan);

// Energy delivered to receiver k under the plan; evaluates the materialized
// trajectory, so it agrees with trajectory_energy exactly.
double plan_energy(const SystemParams& params, const HoverFlyHoverPlan& plan, int k);

enum class Exactness { optimal, heuristic };

struct P1Solution {
    Trajectory trajectory;
    EnergyPair energies;
    std::optional<HoverFlyHoverPlan> plan;  // absent for single-hover passthrough
    Exactness exactness = Exactness::optimal;
    DualPoint dual;       // from the underlying unconstrained solve
    double objective_j = 0.0;
};

// Speed-constrained solve. Dispatch:
//   (a) the unconstrained optimum is already flyable (single hover):
//       passthrough, optimal;
//   (b) equal weights above the separation threshold: symmetric
//       hover-fly-hover with turn point min(xi, V*T/2), optimal;
//   (c) otherwise: two-dimensional search over hover points
//       (x1, x2) in [-xi, xi], x1 <= x2, the first-hover duration solved in
//       closed form from the energy-ratio constraint; heuristic.
// An unbounded speed limit delegates to the unconstrained solver.
P1Solution solve_p1(const SystemParams& params, const EnergyProfile& profile);

}  // namespace wpt
