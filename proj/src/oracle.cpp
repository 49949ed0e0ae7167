#include "wpt/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace wpt::oracle {

namespace {

// Local copy of the power law so the oracles stay independent of the model's
// energy code.
double q_at(const SystemParams& p, double x, int k) {
    const double xk = k == 1 ? -p.d_m / 2.0 : p.d_m / 2.0;
    const double dx = x - xk;
    return p.link_gain() / (dx * dx + p.h_m * p.h_m);
}

double min_ratio_objective(const EnergyProfile& profile, double e1, double e2) {
    double value = std::numeric_limits<double>::infinity();
    if (profile.alpha1 > 0.0) value = std::min(value, e1 / profile.alpha1);
    if (profile.alpha2 > 0.0) value = std::min(value, e2 / profile.alpha2);
    return value;
}

}  // namespace

GridMax grid_max_psi(const SystemParams& params, double lambda1, double lambda2,
                     int n_points) {
    if (n_points < 2) throw std::invalid_argument("grid_max_psi needs n_points >= 2");
    params.validate();
    const double lo = -params.d_m / 2.0;
    const double step = params.d_m / (n_points - 1);
    GridMax best{lo, lambda1 * q_at(params, lo, 1) + lambda2 * q_at(params, lo, 2)};
    for (int i = 1; i < n_points; ++i) {
        const double x = lo + i * step;
        const double v = lambda1 * q_at(params, x, 1) + lambda2 * q_at(params, x, 2);
        if (v > best.value_w) best = GridMax{x, v};
    }
    return best;
}

double quadrature_energy(const SystemParams& params, const Trajectory& traj, int k,
                         long n_steps) {
    if (n_steps < 1) throw std::invalid_argument("quadrature_energy needs n_steps >= 1");
    if (k != 1 && k != 2) throw std::invalid_argument("receiver index must be 1 or 2");
    const double duration = traj.duration_s();
    if (duration <= 0.0) return 0.0;
    const double h = duration / static_cast<double>(n_steps);
    double sum = 0.5 * (q_at(params, traj.position_at(0.0), k) +
                        q_at(params, traj.position_at(duration), k));
    for (long i = 1; i < n_steps; ++i) {
        sum += q_at(params, traj.position_at(i * h), k);
    }
    return sum * h;
}

EllipsoidResult ellipsoid_dual(const SystemParams& params, const EnergyProfile& profile,
                               int max_iters) {
    if (max_iters < 1) throw std::invalid_argument("ellipsoid_dual needs max_iters >= 1");
    params.validate();

    const double a1 = profile.alpha1;
    const double a2 = profile.alpha2;
    double radius = 0.0;
    if (a1 > 0.0) radius = std::max(radius, 2.0 / a1);
    if (a2 > 0.0) radius = std::max(radius, 2.0 / a2);

    constexpr double kFeasEps = 1e-9;
    constexpr int kGridPoints = 20001;
    constexpr double kGapStop = 1e-12;  // certified objective gap, Joules

    std::array<double, 2> z{1.0, 1.0};
    // P starts as radius^2 * I; kept symmetric by construction below.
    double p11 = radius * radius, p12 = 0.0, p22 = radius * radius;

    const auto project = [&](const std::array<double, 2>& y) {
        DualPoint dp;
        if (a2 > 0.0) {
            double l1 = std::max(0.0, y[0]);
            if (a1 > 0.0) l1 = std::min(l1, 1.0 / a1);
            dp.lambda1 = l1;
            dp.lambda2 = (1.0 - a1 * l1) / a2;
        } else {
            dp.lambda1 = 1.0 / a1;
            dp.lambda2 = std::max(0.0, y[1]);
        }
        return dp;
    };

    EllipsoidResult out;
    out.dual = project(z);
    out.value_j = std::numeric_limits<double>::infinity();
    bool found = false;

    int it = 0;
    for (; it < max_iters; ++it) {
        std::array<double, 2> s{};
        if (z[0] < 0.0) {
            s = {-1.0, 0.0};
        } else if (z[1] < 0.0) {
            s = {0.0, -1.0};
        } else if (a1 * z[0] + a2 * z[1] - 1.0 > kFeasEps) {
            s = {a1, a2};
        } else if (1.0 - (a1 * z[0] + a2 * z[1]) > kFeasEps) {
            s = {-a1, -a2};
        } else {
            const DualPoint dp = project(z);
            const GridMax gm = grid_max_psi(params, dp.lambda1, dp.lambda2, kGridPoints);
            const double value = params.t_s * gm.value_w;
            if (value < out.value_j) {
                out.value_j = value;
                out.dual = dp;
            }
            found = true;
            s = {params.t_s * q_at(params, gm.x_m, 1), params.t_s * q_at(params, gm.x_m, 2)};
            const double sps = s[0] * (p11 * s[0] + p12 * s[1]) +
                               s[1] * (p12 * s[0] + p22 * s[1]);
            if (sps <= 0.0 || !std::isfinite(sps) || std::sqrt(sps) <= kGapStop) {
                out.converged = found && std::isfinite(sps) && sps >= 0.0;
                ++it;
                break;
            }
        }

        const double ps0 = p11 * s[0] + p12 * s[1];
        const double ps1 = p12 * s[0] + p22 * s[1];
        const double sps = s[0] * ps0 + s[1] * ps1;
        if (sps <= 0.0 || !std::isfinite(sps)) break;
        const double norm = std::sqrt(sps);
        const double g0 = ps0 / norm, g1 = ps1 / norm;
        z[0] -= g0 / 3.0;
        z[1] -= g1 / 3.0;
        p11 = 4.0 / 3.0 * (p11 - 2.0 / 3.0 * g0 * g0);
        p12 = 4.0 / 3.0 * (p12 - 2.0 / 3.0 * g0 * g1);
        p22 = 4.0 / 3.0 * (p22 - 2.0 / 3.0 * g1 * g1);
    }
    out.iterations = it;
    if (!found) {
        // Never reached the feasible band: report the projected center.
        out.dual = project(z);
        const GridMax gm = grid_max_psi(params, out.dual.lambda1, out.dual.lambda2, kGridPoints);
        out.value_j = params.t_s * gm.value_w;
        out.converged = false;
    }
    return out;
}

StaticBenchmark static_benchmark(const SystemParams& params, const EnergyProfile& profile,
                                 int n_positions) {
    if (n_positions < 2) throw std::invalid_argument("static_benchmark needs n_positions >= 2");
    params.validate();
    const double lo = -params.d_m / 2.0;
    const double step = params.d_m / (n_positions - 1);

    StaticBenchmark best;
    double best_obj = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_positions; ++i) {
        const double x = lo + i * step;
        const double e1 = params.t_s * q_at(params, x, 1);
        const double e2 = params.t_s * q_at(params, x, 2);
        const double obj = min_ratio_objective(profile, e1, e2);
        if (obj > best_obj) {
            best_obj = obj;
            best = StaticBenchmark{x, EnergyPair{e1, e2}, obj};
        }
    }
    return best;
}

DpResult dp_p1(const SystemParams& params, const EnergyProfile& profile, const DpConfig& cfg) {
    params.validate();
    if (!(cfg.dx_m > 0.0) || !(cfg.dt_s > 0.0)) {
        throw std::invalid_argument("dp grid steps must be positive");
    }

    const int m = static_cast<int>(std::floor(params.d_m / cfg.dx_m + 1e-9)) + 1;
    const int n_steps = std::max(1, static_cast<int>(std::llround(params.t_s / cfg.dt_s)));
    const double dt = params.t_s / n_steps;

    int reach = m - 1;
    DpResult out;
    if (!params.speed_unbounded()) {
        reach = static_cast<int>(std::floor(*params.v_mps * dt / cfg.dx_m + 1e-12));
        reach = std::clamp(reach, 0, m - 1);
        out.degenerate_static = (reach == 0 && *params.v_mps > 0.0 && m > 1);
    }

    std::vector<double> xs(m), q1(m), q2(m);
    double q2_max = 0.0;
    for (int i = 0; i < m; ++i) {
        xs[i] = -params.d_m / 2.0 + i * cfg.dx_m;
        q1[i] = q_at(params, xs[i], 1);
        q2[i] = q_at(params, xs[i], 2);
        q2_max = std::max(q2_max, q2[i]);
    }

    constexpr int kLevels = 256;
    const double level_width = params.t_s * q2_max / kLevels;
    const auto level_of = [&](double e2) {
        return std::min(kLevels - 1, static_cast<int>(e2 / level_width));
    };

    struct Entry {
        double e1 = -std::numeric_limits<double>::infinity();
        double e2 = 0.0;
    };
    const std::size_t slice = static_cast<std::size_t>(m) * kLevels;
    std::vector<Entry> cur(slice), nxt(slice);
    // Parents per (step, position, level): the move taken and the source level.
    std::vector<int8_t> parent_move(static_cast<std::size_t>(n_steps) * slice);
    std::vector<uint8_t> parent_level(static_cast<std::size_t>(n_steps) * slice);

    for (int p = 0; p < m; ++p) cur[static_cast<std::size_t>(p) * kLevels] = Entry{0.0, 0.0};

    for (int t = 0; t < n_steps; ++t) {
        std::fill(nxt.begin(), nxt.end(), Entry{});
        const std::size_t base = static_cast<std::size_t>(t) * slice;
        for (int p = 0; p < m; ++p) {
            for (int lvl = 0; lvl < kLevels; ++lvl) {
                const Entry& e = cur[static_cast<std::size_t>(p) * kLevels + lvl];
                if (!std::isfinite(e.e1)) continue;
                const int lo = std::max(0, p - reach);
                const int hi = std::min(m - 1, p + reach);
                for (int pn = lo; pn <= hi; ++pn) {
                    const double e1n = e.e1 + 0.5 * (q1[p] + q1[pn]) * dt;
                    const double e2n = e.e2 + 0.5 * (q2[p] + q2[pn]) * dt;
                    const int ln = level_of(e2n);
                    Entry& cell = nxt[static_cast<std::size_t>(pn) * kLevels + ln];
                    if (e1n > cell.e1 || (e1n == cell.e1 && e2n > cell.e2)) {
                        cell = Entry{e1n, e2n};
                        parent_move[base + static_cast<std::size_t>(pn) * kLevels + ln] =
                            static_cast<int8_t>(pn - p);
                        parent_level[base + static_cast<std::size_t>(pn) * kLevels + ln] =
                            static_cast<uint8_t>(lvl);
                    }
                }
            }
        }
        cur.swap(nxt);
    }

    double best_obj = -std::numeric_limits<double>::infinity();
    int best_p = 0, best_lvl = 0;
    Entry best_e;
    for (int p = 0; p < m; ++p) {
        for (int lvl = 0; lvl < kLevels; ++lvl) {
            const Entry& e = cur[static_cast<std::size_t>(p) * kLevels + lvl];
            if (!std::isfinite(e.e1)) continue;
            const double obj = min_ratio_objective(profile, e.e1, e.e2);
            if (obj > best_obj || (obj == best_obj && e.e1 > best_e.e1)) {
                best_obj = obj;
                best_e = e;
                best_p = p;
                best_lvl = lvl;
            }
        }
    }

    out.energies = EnergyPair{best_e.e1, best_e.e2};
    out.objective_j = best_obj;
    out.path_x.assign(n_steps + 1, 0.0);
    int p = best_p, lvl = best_lvl;
    for (int t = n_steps; t > 0; --t) {
        out.path_x[t] = xs[p];
        const std::size_t idx =
            static_cast<std::size_t>(t - 1) * slice + static_cast<std::size_t>(p) * kLevels + lvl;
        const int move = parent_move[idx];
        lvl = parent_level[idx];
        p -= move;
    }
    out.path_x[0] = xs[p];
    return out;
}

}  // namespace wpt::oracle
