#pragma once

#include <vector>

#include "wpt/model.hpp"
#include "wpt/p2_solver.hpp"

// Brute-force cross-checks. Everything here re-derives its answer from the
// raw power law without reusing the solver's maximization or integration
// paths, so agreement is evidence rather than tautology.
namespace wpt::oracle {

struct GridMax {
    double x_m = 0.0;
    double value_w = 0.0;
};

// Argmax of psi over an n_points uniform grid on [-d/2, d/2] (n_points >= 2).
GridMax grid_max_psi(const SystemParams& params, double lambda1, double lambda2,
                     int n_points);

// Composite-trapezoid integral of Q_k along the trajectory playback with
// n_steps uniform time intervals (n_steps >= 1).
double quadrature_energy(const SystemParams& params, const Trajectory& traj, int k,
                         long n_steps);

struct EllipsoidResult {
    DualPoint dual;
    double value_j = 0.0;
    int iterations = 0;
    bool converged = false;  // false means best-so-far after max_iters
};

// Two-dimensional ellipsoid method for the dual, treating the equality
// constraint as a pair of inequalities; the objective subgradient at a
// feasible center is [T*Q1(x*), T*Q2(x*)] with x* from the grid maximizer.
// Starts from an ellipsoid centered at (1, 1) with radius
// 2*max(1/alpha1, 1/alpha2) over the supported weights.
EllipsoidResult ellipsoid_dual(const SystemParams& params, const EnergyProfile& profile,
                               int max_iters);

struct StaticBenchmark {
    double x_m = 0.0;
    EnergyPair energies;
    double objective_j = 0.0;  // min over supported k of E_k/alpha_k
};

// Best fixed hover position over an n_positions grid (n_positions >= 2):
// the max-min reading of the ratio constraint for a motionless transmitter.
StaticBenchmark static_benchmark(const SystemParams& params, const EnergyProfile& profile,
                                 int n_positions);

struct DpConfig {
    double dx_m = 0.05;
    double dt_s = 0.005;
};

struct DpResult {
    EnergyPair energies;
    double objective_j = 0.0;
    std::vector<double> path_x;     // one position per time node, n_steps + 1
    bool degenerate_static = false; // movement impossible at this grid despite v > 0
};

// Discretized dynamic program over (time, position) states. Each state keeps
// the best E1 for each of 256 quantized E2 levels, which approximates the
// bi-objective frontier well enough for percent-level comparisons. Per-step
// motion is limited to +-floor(v*dt/dx) grid cells; a step's energy uses the
// endpoint average of the power law.
DpResult dp_p1(const SystemParams& params, const EnergyProfile& profile, const DpConfig& cfg);

}  // namespace wpt::oracle
