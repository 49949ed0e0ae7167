#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace wpt {

// Physical scenario: two ground receivers sit on the x-axis at -d/2 and +d/2,
// and an aerial transmitter moves at a fixed altitude h along the line above
// them. Distances in meters, powers in Watts, times in seconds.
struct SystemParams {
    double h_m = 5.0;                    // altitude, > 0
    double d_m = 5.0;                    // receiver separation, >= 0
    double p_w = 10.0;                   // transmit power, > 0
    double eta = 0.5;                    // rectifier efficiency, in (0,1)
    double beta0 = 1e-3;                 // channel gain at the 1 m reference distance, > 0
    double t_s = 1.0;                    // charging duration, > 0
    std::optional<double> v_mps = 10.0;  // speed limit; nullopt means unbounded

    // eta * beta0 * P, the numerator of the received-power law.
    double link_gain() const { return eta * beta0 * p_w; }

    // Receiver positions are derived, never stored: k = 1 -> -d/2, k = 2 -> +d/2.
    double receiver_x(int k) const;

    bool speed_unbounded() const { return !v_mps.has_value(); }

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

// Target split of the delivered energy between the two receivers.
// Construction normalizes so that alpha1 + alpha2 == 1 exactly.
struct EnergyProfile {
    double alpha1 = 0.5;
    double alpha2 = 0.5;

    static EnergyProfile split(double a1, double a2);
    double alpha(int k) const;
    EnergyProfile swapped() const { return EnergyProfile{alpha2, alpha1}; }
};

struct EnergyPair {
    double e1_j = 0.0;
    double e2_j = 0.0;
    double total_j() const { return e1_j + e2_j; }
};

// Trajectory segments. A Fly segment's duration is implied by its length and
// speed; speed must be strictly positive.
struct Hover {
    double x_m = 0.0;
    double duration_s = 0.0;
};

struct Fly {
    double x_start_m = 0.0;
    double x_end_m = 0.0;
    double speed_mps = 1.0;
    double duration_s() const;
};

using Segment = std::variant<Hover, Fly>;

struct Trajectory {
    std::vector<Segment> segments;

    static Trajectory hover(double x_m, double duration_s);

    double duration_s() const;
    double start_x() const;  // position at t = 0; 0 for an empty trajectory
    double end_x() const;

    // Piecewise playback of x(t). t outside [0, duration] clamps to the ends.
    // Instantaneous jumps between segments resolve to the later segment.
    double position_at(double t_s) const;

    // Checks that segment durations sum to params.t_s, consecutive segments
    // are positionally continuous, and fly speeds respect the limit. The
    // speed-unconstrained solver emits hover->hover jumps; those validate
    // only with allow_jumps.
    void validate(const SystemParams& params, bool allow_jumps = false) const;
};

// Received power at receiver k when the transmitter is above x: free-space
// path loss over the slant range, eta*beta0*P / ((x - x_k)^2 + h^2).
double harvested_power(const SystemParams& params, double x_m, int k);

// Exact per-segment energy. Hover contributes duration * Q_k(x); a Fly leg
// integrates in closed form to (eta*beta0*P / (v*h)) * |atan((x_end - x_k)/h)
// - atan((x_start - x_k)/h)|. No quadrature anywhere.
double segment_energy(const SystemParams& params, const Segment& seg, int k);
double trajectory_energy(const SystemParams& params, const Trajectory& traj, int k);
EnergyPair trajectory_energies(const SystemParams& params, const Trajectory& traj);

// True iff the trajectory is flyable under params.v_mps: every fly leg at or
// below the limit and no instantaneous position jumps. Always true when the
// limit is unbounded.
bool max_speed_feasible(const SystemParams& params, const Trajectory& traj);

}  // namespace wpt
