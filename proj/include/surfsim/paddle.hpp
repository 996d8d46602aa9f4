// Hand-paddling propulsion: submerged hands push the board with a force
// opposite to their planar velocity; the lateral moment arm steers.
#pragma once

#include <span>
#include <vector>

#include "surfsim/kinematics.hpp"
#include "surfsim/ocean.hpp"

namespace surfsim {

struct HandSample {
    double t{0.0};
    Vec3 left;
    Vec3 right;

    bool operator==(const HandSample&) const = default;
};

struct PaddleConfig {
    double scale{40.0};         // S, N s/m
    double hand_offset_x{0.4};  // m, lateral moment arm of each hand

    bool operator==(const PaddleConfig&) const = default;
};

void validate(const PaddleConfig& config);

enum class StrokePhase { propulsion, recovery };

/// True iff the hand is strictly below the local surface height.
bool detect_submersion(const Vec3& hand_pos, const OceanConfig& ocean, double t);

StrokePhase classify_phase(const Vec3& hand_pos, const OceanConfig& ocean, double t);

struct PaddleWrench {
    Vec3 force;        // world, applied at the board centre
    double torque_y{0.0};  // about the board's up axis
    Vec3 torque;       // world
    bool left_submerged{false};
    bool right_submerged{false};
};

/// Wrench from two consecutive world-frame samples. Hand velocity is the
/// finite difference of the pair rotated into the board frame; only its x/z
/// components contribute (F_i = -S v_i). Submersion is tested at `current`.
/// Throws std::invalid_argument unless current.t > previous.t.
PaddleWrench paddle_wrench(const HandSample& previous, const HandSample& current,
                           const OceanConfig& ocean, const RigidBodyState& board,
                           const PaddleConfig& config);

enum class StrokeHands { alternating, together, left_only, right_only };

/// Synthetic stroke pattern in board-mounted tracking coordinates. Each hand
/// cycles through a submerged backward sweep at constant speed followed by a
/// lifted forward return.
struct StrokePattern {
    double cadence_hz{1.0};
    double stroke_speed{1.2};          // m/s during propulsion
    double propulsion_fraction{0.7};   // of each cycle
    double depth{0.25};                // m below board centre while pulling
    double lift{0.25};                 // m above board centre while recovering
    double hand_offset_x{0.4};
    double reach_z{0.5};               // m ahead of centre at the catch
    StrokeHands hands{StrokeHands::alternating};
    double sample_rate_hz{100.0};
    double duration{10.0};
};

/// Throws std::invalid_argument on non-positive rates/durations or a
/// propulsion fraction outside (0,1).
std::vector<HandSample> generate_strokes(const StrokePattern& pattern);

/// Linear interpolation in a trace, clamped to its end points.
/// Throws std::invalid_argument on an empty trace.
HandSample sample_trace(std::span<const HandSample> trace, double t);

/// Throws std::invalid_argument unless timestamps strictly increase.
void validate_trace(std::span<const HandSample> trace);

}  // namespace surfsim
