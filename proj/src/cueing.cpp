#include "surfsim/cueing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "surfsim/errors.hpp"

namespace surfsim {

void validate_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must be in (0,1]");
    }
}

Vec3 ema_step(double lambda, const Vec3& previous, const Vec3& sample) {
    return sample * lambda + previous * (1.0 - lambda);
}

BoardKinematics filter_step(FilterState& state, const BoardKinematics& raw) {
    const double l = state.lambda;
    state.last = {ema_step(l, state.last.lin_accel, raw.lin_accel),
                  ema_step(l, state.last.ang_accel, raw.ang_accel),
                  ema_step(l, state.last.lin_vel, raw.lin_vel)};
    return state.last;
}

void validate(const ScalingConfig& s) {
    if (!(s.sf1 > 0.0)) throw std::invalid_argument("sf1 must be > 0");
    if (!(s.sf2 > 0.0)) throw std::invalid_argument("sf2 must be > 0");
    if (!(s.sf3 > 0.0)) throw std::invalid_argument("sf3 must be > 0");
    if (!(s.k_heave > 0.0)) throw std::invalid_argument("k_heave must be > 0");
}

AccelDofs map_accel_dofs(const Vec3& a, const Vec3& alpha, const ScalingConfig& s) {
    return {s.sf1 * a.z, s.sf2 * a.x, s.sf3 * alpha.y};
}

double map_heave(const Vec3& v, double k_heave) { return k_heave * v.y; }

PitchRoll map_pitch_roll(const BodyAxes& axes) {
    // Heading frame: forward projected on the horizontal plane.
    const Vec3 flat{axes.forward.x, 0.0, axes.forward.z};
    const double flat_len = flat.norm();
    if (flat_len < 1e-9) {
        throw GimbalError("map_pitch_roll: forward axis is vertical, heading undefined");
    }
    const Vec3 heading = flat / flat_len;
    const Vec3 heading_right{heading.z, 0.0, -heading.x};

    const double f_long_y = axes.forward.y;
    const double f_long_z = axes.forward.dot(heading);
    const double r_lat_y = axes.right.y;
    const double r_lat_x = axes.right.dot(heading_right);
    return {std::atan2(f_long_y, f_long_z), std::atan2(r_lat_y, r_lat_x)};
}

PlatformFrame compose_frame(const PlatformFrame& request, const PlatformEnvelope& envelope,
                            const PlatformFrame& previous, double dt, bool clamp) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("compose_frame: dt must be > 0");
    }
    if (!clamp) {
        return request;
    }
    PlatformFrame out;
    out.t = request.t;
    for (Dof d : kAllDofs) {
        const DofLimits& lim = envelope[d];
        const double target = std::clamp(request[d], lim.min, lim.max);
        const double step = lim.max_rate * dt;
        const double moved = previous[d] + std::clamp(target - previous[d], -step, step);
        // Re-clamp so a previous frame outside the limits cannot leak through.
        out[d] = std::clamp(moved, lim.min, lim.max);
    }
    return out;
}

void validate(const CueingParams& p) {
    validate_lambda(p.lambda);
    validate(p.scaling);
    validate(p.envelope);
}

CueingPipeline::CueingPipeline(const CueingParams& params, double dt)
    : params_(params), dt_(dt), filter_{params.lambda, {}} {
    validate(params_);
    if (!(dt > 0.0)) {
        throw std::invalid_argument("CueingPipeline: dt must be > 0");
    }
}

namespace {

KinematicSample sample_from(double t, const RigidBodyState& state, const Vec3& prev_lin_vel,
                            const Vec3& prev_ang_vel, double dt) {
    KinematicSample s;
    s.t = t;
    s.kin.lin_accel = world_to_body(state, finite_difference_accel(state.linear_velocity, prev_lin_vel, dt));
    s.kin.ang_accel = world_to_body(state, finite_difference_accel(state.angular_velocity, prev_ang_vel, dt));
    s.kin.lin_vel = world_to_body(state, state.linear_velocity);
    s.axes = body_axes(state);
    return s;
}

}  // namespace

KinematicSample differentiate(double t, const RigidBodyState& previous, const RigidBodyState& current,
                              double dt) {
    return sample_from(t, current, previous.linear_velocity, previous.angular_velocity, dt);
}

CueingOutput CueingPipeline::step(double t, const RigidBodyState& state) {
    if (!have_velocity_) {
        prev_lin_vel_ = state.linear_velocity;
        prev_ang_vel_ = state.angular_velocity;
        have_velocity_ = true;
    }
    const KinematicSample s = sample_from(t, state, prev_lin_vel_, prev_ang_vel_, dt_);
    prev_lin_vel_ = state.linear_velocity;
    prev_ang_vel_ = state.angular_velocity;
    return step(s);
}

CueingOutput CueingPipeline::step(const KinematicSample& sample) {
    CueingOutput out;
    out.raw = sample.kin;
    out.filtered = filter_step(filter_, sample.kin);

    const AccelDofs acc = map_accel_dofs(out.filtered.lin_accel, out.filtered.ang_accel, params_.scaling);
    // A vertical board has no defined tilt; hold the last one.
    try {
        last_tilt_ = map_pitch_roll(sample.axes);
    } catch (const GimbalError&) {
    }

    PlatformFrame& r = out.requested;
    r.t = sample.t;
    r.surge = acc.surge;
    r.sway = acc.sway;
    r.yaw = acc.yaw;
    r.heave = map_heave(out.filtered.lin_vel, params_.scaling.k_heave);
    r.pitch = last_tilt_.pitch;
    r.roll = last_tilt_.roll;

    out.commanded = compose_frame(r, params_.envelope, previous_, dt_, params_.clamp);
    previous_ = out.commanded;
    return out;
}

std::vector<CueingOutput> run_cueing(std::span<const KinematicSample> log, const CueingParams& params,
                                     double dt) {
    CueingPipeline pipeline(params, dt);
    std::vector<CueingOutput> out;
    out.reserve(log.size());
    for (const auto& s : log) {
        out.push_back(pipeline.step(s));
    }
    return out;
}

}  // namespace surfsim
