#include "wpt/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpt {

namespace {

constexpr double kContinuityTolM = 1e-9;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double SystemParams::receiver_x(int k) const {
    if (k == 1) return -d_m / 2.0;
    if (k == 2) return d_m / 2.0;
    throw std::invalid_argument("receiver index must be 1 or 2, got " + std::to_string(k));
}

void SystemParams::validate() const {
    require(std::isfinite(h_m) && h_m > 0.0, "altitude h_m must be > 0");
    require(std::isfinite(d_m) && d_m >= 0.0, "separation d_m must be >= 0");
    require(std::isfinite(p_w) && p_w > 0.0, "transmit power p_w must be > 0");
    require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
    require(std::isfinite(beta0) && beta0 > 0.0, "beta0 must be > 0");
    require(std::isfinite(t_s) && t_s > 0.0, "duration t_s must be > 0");
    if (v_mps) {
        require(std::isfinite(*v_mps) && *v_mps >= 0.0, "speed limit v_mps must be >= 0");
    }
}

EnergyProfile EnergyProfile::split(double a1, double a2) {
    if (!(std::isfinite(a1) && std::isfinite(a2)) || a1 < 0.0 || a2 < 0.0 || a1 + a2 <= 0.0) {
        throw std::invalid_argument("energy profile weights must be nonnegative with a positive sum");
    }
    const double sum = a1 + a2;
    EnergyProfile p{a1 / sum, a2 / sum};
    // Pin the pair so alpha1 + alpha2 == 1 holds exactly after rounding.
    p.alpha2 = 1.0 - p.alpha1;
    return p;
}

double EnergyProfile::alpha(int k) const {
    if (k == 1) return alpha1;
    if (k == 2) return alpha2;
    throw std::invalid_argument("receiver index must be 1 or 2, got " + std::to_string(k));
}

double Fly::duration_s() const {
    return std::abs(x_end_m - x_start_m) / speed_mps;
}

Trajectory Trajectory::hover(double x_m, double duration_s) {
    Trajectory t;
    t.segments.push_back(Hover{x_m, duration_s});
    return t;
}

namespace {

double segment_duration(const Segment& seg) {
    if (const auto* h = std::get_if<Hover>(&seg)) return h->duration_s;
    return std::get<Fly>(seg).duration_s();
}

double segment_start(const Segment& seg) {
    if (const auto* h = std::get_if<Hover>(&seg)) return h->x_m;
    return std::get<Fly>(seg).x_start_m;
}

double segment_end(const Segment& seg) {
    if (const auto* h = std::get_if<Hover>(&seg)) return h->x_m;
    return std::get<Fly>(seg).x_end_m;
}

}  // namespace

double Trajectory::duration_s() const {
    double total = 0.0;
    for (const auto& seg : segments) total += segment_duration(seg);
    return total;
}

double Trajectory::start_x() const {
    return segments.empty() ? 0.0 : segment_start(segments.front());
}

double Trajectory::end_x() const {
    return segments.empty() ? 0.0 : segment_end(segments.back());
}

double Trajectory::position_at(double t_s) const {
    if (segments.empty()) return 0.0;
    if (t_s <= 0.0) return start_x();
    double elapsed = 0.0;
    for (const auto& seg : segments) {
        const double dur = segment_duration(seg);
        if (t_s < elapsed + dur) {
            if (const auto* h = std::get_if<Hover>(&seg)) return h->x_m;
            const auto& f = std::get<Fly>(seg);
            const double frac = (t_s - elapsed) / dur;
            return f.x_start_m + frac * (f.x_end_m - f.x_start_m);
        }
        elapsed += dur;
    }
    return end_x();
}

void Trajectory::validate(const SystemParams& params, bool allow_jumps) const {
    params.validate();
    double total = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        if (const auto* f = std::get_if<Fly>(&seg)) {
            require(std::isfinite(f->speed_mps) && f->speed_mps > 0.0, "fly speed must be > 0");
            if (!params.speed_unbounded()) {
                require(f->speed_mps <= *params.v_mps, "fly speed exceeds the limit");
            }
        } else {
            require(std::get<Hover>(seg).duration_s >= 0.0, "hover duration must be >= 0");
        }
        if (i > 0 && !allow_jumps) {
            require(std::abs(segment_start(seg) - segment_end(segments[i - 1])) <= kContinuityTolM,
                    "consecutive segments must be positionally continuous");
        }
        total += segment_duration(seg);
    }
    require(std::abs(total - params.t_s) <= 1e-9 * std::max(1.0, params.t_s),
            "segment durations must sum to the charging duration");
}

double harvested_power(const SystemParams& params, double x_m, int k) {
    const double dx = x_m - params.receiver_x(k);
    return params.link_gain() / (dx * dx + params.h_m * params.h_m);
}

double segment_energy(const SystemParams& params, const Segment& seg, int k) {
    const double xk = params.receiver_x(k);
    const double h = params.h_m;
    if (const auto* hov = std::get_if<Hover>(&seg)) {
        return hov->duration_s * harvested_power(params, hov->x_m, k);
    }
    const auto& f = std::get<Fly>(seg);
    const double sweep =
        std::atan((f.x_end_m - xk) / h) - std::atan((f.x_start_m - xk) / h);
    return params.link_gain() / (f.speed_mps * h) * std::abs(sweep);
}

double trajectory_energy(const SystemParams& params, const Trajectory& traj, int k) {
    double e = 0.0;
    for (const auto& seg : traj.segments) e += segment_energy(params, seg, k);
    return e;
}

EnergyPair trajectory_energies(const SystemParams& params, const Trajectory& traj) {
    return EnergyPair{trajectory_energy(params, traj, 1), trajectory_energy(params, traj, 2)};
}

bool max_speed_feasible(const SystemParams& params, const Trajectory& traj) {
    if (params.speed_unbounded()) return true;
    const double v = *params.v_mps;
    for (std::size_t i = 0; i < traj.segments.size(); ++i) {
        if (const auto* f = std::get_if<Fly>(&traj.segments[i])) {
            if (f->speed_mps > v) return false;
        }
        if (i > 0 &&
            std::abs(segment_start(traj.segments[i]) - segment_end(traj.segments[i - 1])) >
                kContinuityTolM) {
            return false;  // an instantaneous jump needs infinite speed
        }
    }
    return true;
}

}  // namespace wpt
