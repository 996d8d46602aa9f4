#include "surfsim/kinematics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "surfsim/errors.hpp"

namespace surfsim {

Vec3 slab_inertia(double mass, double width_x, double thickness_y, double length_z) {
    const double k = mass / 12.0;
    return {k * (thickness_y * thickness_y + length_z * length_z),
            k * (width_x * width_x + length_z * length_z),
            k * (width_x * width_x + thickness_y * thickness_y)};
}

void validate(const RigidBodyState& state) {
    if (!(state.mass > 0.0)) {
        throw std::invalid_argument("mass must be > 0");
    }
    if (!(state.inertia_diag.x > 0.0 && state.inertia_diag.y > 0.0 && state.inertia_diag.z > 0.0)) {
        throw std::invalid_argument("inertia components must be > 0");
    }
}

namespace {

bool finite_state(const RigidBodyState& s) {
    return s.position.is_finite() && s.orientation.is_finite() && s.linear_velocity.is_finite() &&
           s.angular_velocity.is_finite();
}

Vec3 solve3(const std::array<Vec3, 3>& rows, const Vec3& b) {
    const Vec3& r0 = rows[0];
    const Vec3& r1 = rows[1];
    const Vec3& r2 = rows[2];
    const double det = r0.dot(r1.cross(r2));
    // Columns of the inverse are the cross products of row pairs.
    const Vec3 c0 = r1.cross(r2);
    const Vec3 c1 = r2.cross(r0);
    const Vec3 c2 = r0.cross(r1);
    return (c0 * b.x + c1 * b.y + c2 * b.z) / det;
}

// Torque-free Euler equations in the body frame, one implicit-midpoint step:
//   I (w1 - w0) + dt * wm x (I wm) = 0,  wm = (w0 + w1) / 2
// Midpoint keeps both kinetic energy and |L| exact; solved by Newton.
Vec3 gyroscopic_step(const Vec3& w0, const Vec3& inertia, double dt) {
    Vec3 w1 = w0;
    for (int iter = 0; iter < 20; ++iter) {
        const Vec3 wm = (w0 + w1) * 0.5;
        const Vec3 lm = wm.cwise(inertia);
        const Vec3 f = (w1 - w0).cwise(inertia) + wm.cross(lm) * dt;
        // d/dw1 [wm x (I wm)] = 0.5 * (skew(wm) I - skew(I wm))
        const double h = 0.5 * dt;
        const std::array<Vec3, 3> jac{
            Vec3{inertia.x, h * (-wm.z * inertia.y + lm.z), h * (wm.y * inertia.z - lm.y)},
            Vec3{h * (wm.z * inertia.x - lm.z), inertia.y, h * (-wm.x * inertia.z + lm.x)},
            Vec3{h * (-wm.y * inertia.x + lm.y), h * (wm.x * inertia.y - lm.x), inertia.z},
        };
        const Vec3 delta = solve3(jac, f);
        w1 -= delta;
        if (delta.norm() <= 1e-15 * (1.0 + w1.norm())) break;
    }
    return w1;
}

}  // namespace

RigidBodyState integrate_step(const RigidBodyState& state, const Vec3& force, const Vec3& torque,
                              double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw IntegrationError("integrate_step: dt must be finite and > 0");
    }
    if (!force.is_finite() || !torque.is_finite()) {
        throw IntegrationError("integrate_step: non-finite force or torque");
    }
    if (!finite_state(state)) {
        throw IntegrationError("integrate_step: non-finite state");
    }

    RigidBodyState next = state;
    const Quat& q = state.orientation;

    next.linear_velocity = state.linear_velocity + force * (dt / state.mass);

    // Torque impulse, then the gyroscopic term, both in the body frame of q.
    const Vec3& inertia = state.inertia_diag;
    Vec3 w_body = q.conjugate().rotate(state.angular_velocity);
    const Vec3 tau_body = q.conjugate().rotate(torque);
    w_body += Vec3{tau_body.x / inertia.x, tau_body.y / inertia.y, tau_body.z / inertia.z} * dt;
    next.angular_velocity = q.rotate(gyroscopic_step(w_body, inertia, dt));

    next.position = state.position + next.linear_velocity * dt;
    next.orientation = (Quat::from_rotation_vector(next.angular_velocity * dt) * q).normalized();

    if (!finite_state(next)) {
        throw IntegrationError("integrate_step: state became non-finite");
    }
    return next;
}

Vec3 world_to_body(const RigidBodyState& state, const Vec3& v) {
    return state.orientation.conjugate().rotate(v);
}

Vec3 body_to_world(const RigidBodyState& state, const Vec3& v) {
    return state.orientation.rotate(v);
}

BodyAxes body_axes(const Quat& q) {
    return {q.rotate(kUnitZ), q.rotate(kUnitX), q.rotate(kUnitY)};
}

BodyAxes body_axes(const RigidBodyState& state) { return body_axes(state.orientation); }

double heading_angle(const Quat& orientation) {
    const Vec3 f = orientation.rotate(kUnitZ);
    return std::atan2(f.x, f.z);
}

Vec3 finite_difference_accel(const Vec3& v_now, const Vec3& v_prev, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("finite_difference_accel: dt must be > 0");
    }
    return (v_now - v_prev) / dt;
}

double rotational_energy(const RigidBodyState& state) {
    const Vec3 body_w = world_to_body(state, state.angular_velocity);
    return 0.5 * body_w.dot(body_w.cwise(state.inertia_diag));
}

}  // namespace surfsim
