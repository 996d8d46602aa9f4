#include "surfsim/paddle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace surfsim {

void validate(const PaddleConfig& config) {
    if (!(config.scale > 0.0)) throw std::invalid_argument("paddle scale S must be > 0");
    if (!(config.hand_offset_x > 0.0)) throw std::invalid_argument("hand_offset_x must be > 0");
}

bool detect_submersion(const Vec3& hand_pos, const OceanConfig& ocean, double t) {
    return hand_pos.y < height_at(ocean, hand_pos.x, hand_pos.z, t);
}

StrokePhase classify_phase(const Vec3& hand_pos, const OceanConfig& ocean, double t) {
    return detect_submersion(hand_pos, ocean, t) ? StrokePhase::propulsion : StrokePhase::recovery;
}

PaddleWrench paddle_wrench(const HandSample& previous, const HandSample& current,
                           const OceanConfig& ocean, const RigidBodyState& board,
                           const PaddleConfig& config) {
    const double dt = current.t - previous.t;
    if (!(dt > 0.0)) {
        throw std::invalid_argument("paddle_wrench: sample times must strictly increase");
    }
    PaddleWrench out;
    Vec3 force_body;
    const auto add_hand = [&](const Vec3& prev, const Vec3& cur, double arm_x) {
        if (!detect_submersion(cur, ocean, current.t)) {
            return false;
        }
        const Vec3 v = world_to_body(board, (cur - prev) / dt);
        const Vec3 f{-config.scale * v.x, 0.0, -config.scale * v.z};
        force_body += f;
        out.torque_y += Vec3{arm_x, 0.0, 0.0}.cross(f).y;
        return true;
    };
    out.left_submerged = add_hand(previous.left, current.left, -config.hand_offset_x);
    out.right_submerged = add_hand(previous.right, current.right, config.hand_offset_x);
    out.force = body_to_world(board, force_body);
    out.torque = body_to_world(board, {0.0, out.torque_y, 0.0});
    return out;
}

namespace {

constexpr double kReturnFraction = 0.8;

Vec3 stroke_position(const StrokePattern& p, double phase, double side) {
    const double period = 1.0 / p.cadence_hz;
    const double pull = p.propulsion_fraction;
    const double length = p.stroke_speed * pull * period;
    const double x = side * p.hand_offset_x;
    if (phase < pull) {
        return {x, -p.depth, p.reach_z - p.stroke_speed * phase * period};
    }
    // Return forward over most of the recovery, then hover at the catch so
    // the hand enters the water vertically.
    const double back = p.reach_z - length;
    const double r = std::min(1.0, (phase - pull) / ((1.0 - pull) * kReturnFraction));
    return {x, p.lift, back + length * r};
}

Vec3 idle_position(const StrokePattern& p, double side) {
    return {side * p.hand_offset_x, p.lift, p.reach_z};
}

}  // namespace

std::vector<HandSample> generate_strokes(const StrokePattern& p) {
    if (!(p.cadence_hz > 0.0) || !(p.sample_rate_hz > 0.0) || !(p.duration > 0.0)) {
        throw std::invalid_argument("stroke pattern: cadence, sample rate and duration must be > 0");
    }
    if (!(p.propulsion_fraction > 0.0 && p.propulsion_fraction < 1.0)) {
        throw std::invalid_argument("stroke pattern: propulsion_fraction must be in (0,1)");
    }
    if (!(p.stroke_speed >= 0.0)) {
        throw std::invalid_argument("stroke pattern: stroke_speed must be >= 0");
    }
    const auto n = static_cast<std::size_t>(std::llround(p.duration * p.sample_rate_hz));
    std::vector<HandSample> trace;
    trace.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / p.sample_rate_hz;
        const double cycles = t * p.cadence_hz;
        const double phase = cycles - std::floor(cycles);
        double phase_right = phase;
        if (p.hands == StrokeHands::alternating) {
            phase_right = phase + 0.5 - std::floor(phase + 0.5);
        }
        HandSample s{t, stroke_position(p, phase, -1.0), stroke_position(p, phase_right, 1.0)};
        if (p.hands == StrokeHands::right_only) s.left = idle_position(p, -1.0);
        if (p.hands == StrokeHands::left_only) s.right = idle_position(p, 1.0);
        trace.push_back(s);
    }
    return trace;
}

HandSample sample_trace(std::span<const HandSample> trace, double t) {
    if (trace.empty()) {
        throw std::invalid_argument("sample_trace: empty trace");
    }
    if (t <= trace.front().t) return {t, trace.front().left, trace.front().right};
    if (t >= trace.back().t) return {t, trace.back().left, trace.back().right};
    const auto it = std::upper_bound(trace.begin(), trace.end(), t,
                                     [](double v, const HandSample& s) { return v < s.t; });
    const HandSample& b = *it;
    const HandSample& a = *(it - 1);
    const double u = (t - a.t) / (b.t - a.t);
    return {t, a.left + (b.left - a.left) * u, a.right + (b.right - a.right) * u};
}

void validate_trace(std::span<const HandSample> trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (!std::isfinite(trace[i].t) || !trace[i].left.is_finite() || !trace[i].right.is_finite()) {
            throw std::invalid_argument("hand trace: non-finite value at row " + std::to_string(i + 1));
        }
        if (i > 0 && !(trace[i].t > trace[i - 1].t)) {
            throw std::invalid_argument("hand trace: t must strictly increase (row " +
                                        std::to_string(i + 1) + ")");
        }
    }
}

}  // namespace surfsim
