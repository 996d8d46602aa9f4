// Motion cueing: EMA-filtered board kinematics mapped onto platform DoFs.
//
//   surge = sf1 * a_f.z     sway = sf2 * a_f.x     yaw = sf3 * alpha_f.y
//   heave = k_h * v_f.y
//   pitch / roll from the board axes expressed in the yaw-free heading frame
//
// Accelerations come from differencing world velocities and are expressed in
// the board frame before filtering. Every emitted frame is clamped to the
// platform envelope and then rate limited.
#pragma once

#include <vector>

#include "surfsim/frame.hpp"
#include "surfsim/kinematics.hpp"

namespace surfsim {

/// Throws std::invalid_argument("lambda must be in (0,1]") when out of range.
void validate_lambda(double lambda);

/// lambda * sample + (1 - lambda) * previous.
Vec3 ema_step(double lambda, const Vec3& previous, const Vec3& sample);

/// Body-frame kinematics of one step; used both raw and filtered.
struct BoardKinematics {
    Vec3 lin_accel;  // m/s^2
    Vec3 ang_accel;  // rad/s^2
    Vec3 lin_vel;    // m/s

    bool operator==(const BoardKinematics&) const = default;
};

/// EMA state: coefficient and the last filtered value of each channel.
struct FilterState {
    double lambda{0.2};
    BoardKinematics last;
};

/// Filters all three channels with the shared coefficient and stores the
/// result as the new `last`.
BoardKinematics filter_step(FilterState& state, const BoardKinematics& raw);

struct ScalingConfig {
    double sf1{0.02};     // m per m/s^2 (surge)
    double sf2{0.02};     // m per m/s^2 (sway)
    double sf3{0.05};     // rad per rad/s^2 (yaw)
    double k_heave{1.0};  // s, velocity -> heave displacement

    bool operator==(const ScalingConfig&) const = default;
};

void validate(const ScalingConfig& scaling);

struct AccelDofs {
    double surge{0.0};
    double sway{0.0};
    double yaw{0.0};
};

AccelDofs map_accel_dofs(const Vec3& accel_filtered, const Vec3& ang_accel_filtered,
                         const ScalingConfig& scaling);

double map_heave(const Vec3& vel_filtered, double k_heave);

/// pitch: positive nose up. roll: positive when the right side is raised.
struct PitchRoll {
    double pitch{0.0};
    double roll{0.0};
};

/// Throws GimbalError when the forward axis has no horizontal component.
PitchRoll map_pitch_roll(const BodyAxes& axes);

/// Clamp each DoF of `request` to the envelope, then limit its change from
/// `previous` to max_rate * dt. With `clamp` false the request passes through
/// unchanged. Throws std::invalid_argument if dt <= 0.
PlatformFrame compose_frame(const PlatformFrame& request, const PlatformEnvelope& envelope,
                            const PlatformFrame& previous, double dt, bool clamp = true);

struct CueingParams {
    double lambda{0.2};
    ScalingConfig scaling;
    PlatformEnvelope envelope{default_envelope()};
    bool clamp{true};

    bool operator==(const CueingParams&) const = default;
};

void validate(const CueingParams& params);

/// Board-frame kinematic sample plus attitude; input to a cueing pipeline.
struct KinematicSample {
    double t{0.0};
    BoardKinematics kin;
    BodyAxes axes{kUnitZ, kUnitX, kUnitY};
};

struct CueingOutput {
    BoardKinematics raw;
    BoardKinematics filtered;
    PlatformFrame requested;  // before clamping / rate limiting
    PlatformFrame commanded;
};

/// Stateful stream transformer, one per simulation.
class CueingPipeline {
public:
    CueingPipeline(const CueingParams& params, double dt);

    /// Differentiates the state's velocities against the previous call (zero
    /// acceleration on the first call) and runs the mapping.
    CueingOutput step(double t, const RigidBodyState& state);

    /// Runs the mapping on already-differentiated body-frame kinematics.
    CueingOutput step(const KinematicSample& sample);

    [[nodiscard]] const PlatformFrame& last_frame() const { return previous_; }
    [[nodiscard]] const CueingParams& params() const { return params_; }

private:
    CueingParams params_;
    double dt_;
    FilterState filter_;
    PlatformFrame previous_;
    PitchRoll last_tilt_;
    bool have_velocity_{false};
    Vec3 prev_lin_vel_;
    Vec3 prev_ang_vel_;
};

/// Body-frame kinematics from a state pair one step apart.
KinematicSample differentiate(double t, const RigidBodyState& previous, const RigidBodyState& current,
                              double dt);

/// Runs a fresh pipeline over a kinematic log.
std::vector<CueingOutput> run_cueing(std::span<const KinematicSample> log, const CueingParams& params,
                                     double dt);

}  // namespace surfsim
