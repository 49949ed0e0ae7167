#include "wpt/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpt/errors.hpp"
#include "wpt/parallel.hpp"

namespace wpt {

namespace {

constexpr int kGridN = 201;       // coarse search per axis over [-xi, xi]
constexpr int kRefineHalf = 5;    // refinement: +-5 steps of cell/10

double objective_value(const EnergyProfile& profile, const EnergyPair& e) {
    double value = std::numeric_limits<double>::infinity();
    if (profile.alpha1 > 0.0) value = std::min(value, e.e1_j / profile.alpha1);
    if (profile.alpha2 > 0.0) value = std::min(value, e.e2_j / profile.alpha2);
    return value;
}

struct PairCandidate {
    bool feasible = false;
    double total_j = -std::numeric_limits<double>::infinity();
    double x1 = 0.0;
    double x2 = 0.0;
    double t_hover1 = 0.0;
    double t_slack = std::numeric_limits<double>::infinity();  // distance of t to its window
};

// Deterministic preference: larger total, then smaller (x1, x2).
bool better(const PairCandidate& a, const PairCandidate& b) {
    if (!b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (a.total_j != b.total_j) return a.total_j > b.total_j;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.x2 < b.x2;
}

class PairEvaluator {
public:
    PairEvaluator(const SystemParams& params, const EnergyProfile& profile)
        : params_(params),
          profile_(profile),
          v_(*params.v_mps),
          t_(params.t_s),
          gain_(params.link_gain()) {}

    // Solves the first-hover duration from the ratio constraint
    // alpha2*E1(t) == alpha1*E2(t); both energies are affine in t.
    PairCandidate evaluate(double x1, double x2) const {
        PairCandidate c;
        c.x1 = x1;
        c.x2 = x2;
        const double t_fly = x2 > x1 ? (x2 - x1) / v_ : 0.0;
        if (!(t_fly <= t_)) return c;  // also rejects inf when v == 0

        const double q1a = harvested_power(params_, x1, 1);
        const double q1b = harvested_power(params_, x2, 1);
        const double q2a = harvested_power(params_, x1, 2);
        const double q2b = harvested_power(params_, x2, 2);
        const double f1 = flight_term(x1, x2, 1);
        const double f2 = flight_term(x1, x2, 2);
        const double c1 = (t_ - t_fly) * q1b + f1;
        const double c2 = (t_ - t_fly) * q2b + f2;
        const double d1 = q1a - q1b;
        const double d2 = q2a - q2b;

        const double denom = profile_.alpha2 * d1 - profile_.alpha1 * d2;
        if (std::abs(denom) < 1e-30) return c;  // ratio independent of t; the
                                                // exact static candidate covers it
        double t_hover = (profile_.alpha1 * c2 - profile_.alpha2 * c1) / denom;
        const double window = t_ - t_fly;
        const double snap = 1e-12 * t_;
        c.t_slack = std::max(0.0, std::max(-t_hover, t_hover - window));
        if (t_hover < -snap || t_hover > window + snap) return c;
        t_hover = std::clamp(t_hover, 0.0, window);

        c.feasible = true;
        c.t_hover1 = t_hover;
        c.total_j = c1 + c2 + t_hover * (d1 + d2);
        return c;
    }

private:
    double flight_term(double x1, double x2, int k) const {
        if (x2 <= x1) return 0.0;
        const double xk = params_.receiver_x(k);
        const double h = params_.h_m;
        return gain_ / (v_ * h) * (std::atan((x2 - xk) / h) - std::atan((x1 - xk) / h));
    }

    const SystemParams& params_;
    const EnergyProfile& profile_;
    double v_;
    double t_;
    double gain_;
};

// Hover point whose power ratio matches the profile exactly; the ratio
// Q1/Q2 is strictly decreasing in x, so bisection applies.
double static_fair_position(const SystemParams& params, const EnergyProfile& profile,
                            double lo, double hi) {
    const auto imbalance = [&](double x) {
        return profile.alpha2 * harvested_power(params, x, 1) -
               profile.alpha1 * harvested_power(params, x, 2);
    };
    double flo = imbalance(lo);
    if (flo <= 0.0) return lo;
    if (imbalance(hi) >= 0.0) return hi;
    double a = lo, b = hi;
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = imbalance(m);
        if (fm == 0.0) return m;
        if (flo * fm > 0.0) {
            a = m;
            flo = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

P1Solution wrap_p2(const SystemParams& params, const EnergyProfile& profile,
                   P2Solution&& p2) {
    P1Solution sol;
    sol.trajectory = std::move(p2.trajectory);
    sol.energies = p2.energies;
    sol.exactness = Exactness::optimal;
    sol.dual = p2.dual;
    sol.objective_j = objective_value(profile, sol.energies);
    return sol;
}

}  // namespace

Trajectory plan_trajectory(const SystemParams& params, const HoverFlyHoverPlan& plan) {
    if (plan.x2_m < plan.x1_m) throw std::invalid_argument("plan requires x1 <= x2");
    if (plan.t_hover1_s < 0.0) throw std::invalid_argument("plan hover duration must be >= 0");
    double t_fly = 0.0;
    if (plan.x2_m > plan.x1_m) {
        if (params.speed_unbounded() || *params.v_mps <= 0.0) {
            throw std::invalid_argument("a moving plan needs a bounded positive speed limit");
        }
        t_fly = (plan.x2_m - plan.x1_m) / *params.v_mps;
    }
    const double t_rest = params.t_s - plan.t_hover1_s - t_fly;
    if (t_rest < -1e-9 * params.t_s) {
        throw std::invalid_argument("plan exceeds the charging duration");
    }

    Trajectory traj;
    if (plan.t_hover1_s > 0.0) traj.segments.push_back(Hover{plan.x1_m, plan.t_hover1_s});
    if (t_fly > 0.0) traj.segments.push_back(Fly{plan.x1_m, plan.x2_m, *params.v_mps});
    if (t_rest > 0.0) traj.segments.push_back(Hover{plan.x2_m, t_rest});
    if (traj.segments.empty()) traj.segments.push_back(Hover{plan.x1_m, params.t_s});
    return traj;
}

double plan_energy(const SystemParams& params, const HoverFlyHoverPlan& plan, int k) {
    return trajectory_energy(params, plan_trajectory(params, plan), k);
}

P1Solution solve_p1(const SystemParams& params, const EnergyProfile& profile) {
    params.validate();
    if (params.speed_unbounded()) {
        return wrap_p2(params, profile, solve_p2(params, profile));
    }

    P2Solution p2 = solve_p2(params, profile);
    if (max_speed_feasible(params, p2.trajectory)) {
        // Single-hover optimum of the relaxed problem is flyable as-is, and
        // the relaxation upper-bounds the constrained problem.
        return wrap_p2(params, profile, std::move(p2));
    }

    // From here on the relaxed optimum time-shares between -xi and +xi.
    const SymmetricOptimum sym = symmetric_optimum(params);
    const double xi = sym.xi_m.value();
    const double v = *params.v_mps;
    const double t = params.t_s;

    P1Solution sol;
    sol.dual = p2.dual;

    if (std::abs(profile.alpha1 - 0.5) <= 1e-12) {
        // Equal split: symmetric turn point, capped by how far the limit
        // allows within half the period.
        const double x_hat = std::min(xi, v * t / 2.0);
        HoverFlyHoverPlan plan;
        if (x_hat > 0.0) {
            plan = HoverFlyHoverPlan{-x_hat, x_hat, std::max(0.0, t / 2.0 - x_hat / v)};
        } else {
            plan = HoverFlyHoverPlan{0.0, 0.0, t};  // v == 0
        }
        sol.trajectory = plan_trajectory(params, plan);
        sol.energies = trajectory_energies(params, sol.trajectory);
        sol.plan = plan;
        sol.exactness = Exactness::optimal;
        sol.objective_j = objective_value(profile, sol.energies);
        return sol;
    }

    // General profile: two-stage grid search over the hover pair, ratio
    // constraint solved per pair. Cells are independent; the merge order is
    // fixed so the argmax is deterministic under any thread count.
    const PairEvaluator evaluator(params, profile);
    const double cell = kGridN > 1 ? 2.0 * xi / (kGridN - 1) : 0.0;
    std::vector<PairCandidate> row_best(kGridN);
    parallel_for(kGridN, [&](std::size_t i) {
        PairCandidate best;
        const double x1 = -xi + static_cast<double>(i) * cell;
        for (int j = static_cast<int>(i); j < kGridN; ++j) {
            const double x2 = -xi + j * cell;
            const PairCandidate c = evaluator.evaluate(x1, std::min(x2, xi));
            if (better(c, best)) best = c;
        }
        row_best[i] = best;
    });
    PairCandidate best;
    double nearest_slack = std::numeric_limits<double>::infinity();
    for (const auto& c : row_best) {
        if (better(c, best)) best = c;
        nearest_slack = std::min(nearest_slack, c.t_slack);
    }

    if (best.feasible) {
        const double fine = cell / 10.0;
        const PairCandidate coarse = best;
        for (int di = -kRefineHalf; di <= kRefineHalf; ++di) {
            for (int dj = -kRefineHalf; dj <= kRefineHalf; ++dj) {
                const double x1 = std::clamp(coarse.x1 + di * fine, -xi, xi);
                const double x2 = std::clamp(coarse.x2 + dj * fine, -xi, xi);
                if (x2 < x1) continue;
                const PairCandidate c = evaluator.evaluate(x1, x2);
                if (better(c, best)) best = c;
            }
        }
    }

    // Exact single-hover fallback at the ratio-matching position; this is
    // always feasible inside the time-share regime, so the search cannot
    // come back empty there.
    const double x_static = static_fair_position(params, profile, -xi, xi);
    PairCandidate stat;
    stat.feasible = true;
    stat.x1 = stat.x2 = x_static;
    stat.t_hover1 = t;
    stat.total_j = t * (harvested_power(params, x_static, 1) +
                        harvested_power(params, x_static, 2));
    if (better(stat, best)) best = stat;

    if (!best.feasible) {
        throw solver_error(
            "no feasible hover-fly-hover plan; nearest candidate misses its hover window by " +
            std::to_string(nearest_slack) + " s");
    }

    HoverFlyHoverPlan plan{best.x1, best.x2, best.t_hover1};
    sol.trajectory = plan_trajectory(params, plan);
    sol.energies = trajectory_energies(params, sol.trajectory);
    sol.plan = plan;
    sol.exactness = Exactness::heuristic;
    sol.objective_j = objective_value(profile, sol.energies);

    const double imbalance =
        std::abs(profile.alpha2 * sol.energies.e1_j - profile.alpha1 * sol.energies.e2_j);
    if (imbalance > 1e-9 * sol.energies.total_j()) {
        throw solver_error("hover-fly-hover search violated the energy ratio; imbalance " +
                           std::to_string(imbalance));
    }
    return sol;
}

}  // namespace wpt
