// Rigid-body state, fixed-step integration and frame transforms.
#pragma once

#include "surfsim/vec3.hpp"

namespace surfsim {

inline constexpr double kDefaultMass = 150.0;  // rider + board, kg
inline constexpr double kDefaultTimestep = 0.01;

/// Slab inertia (kg m^2, body frame) for a box of the given extents.
Vec3 slab_inertia(double mass, double width_x, double thickness_y, double length_z);

struct RigidBodyState {
    Vec3 position;           // m, world
    Quat orientation;        // body -> world
    Vec3 linear_velocity;    // m/s, world
    Vec3 angular_velocity;   // rad/s, world
    double mass{kDefaultMass};
    Vec3 inertia_diag{slab_inertia(kDefaultMass, 0.6, 0.1, 2.2)};

    bool operator==(const RigidBodyState&) const = default;
};

/// Board axes expressed in world coordinates.
struct BodyAxes {
    Vec3 forward;  // body +z
    Vec3 right;    // body +x
    Vec3 up;       // body +y
};

/// Throws std::invalid_argument when mass or inertia is not strictly positive.
void validate(const RigidBodyState& state);

/// One semi-implicit Euler step: velocities first, then position and
/// orientation from the updated velocities. Orientation is advanced with the
/// exact rotation of the step's angular velocity and renormalized. The
/// gyroscopic term is taken implicitly (midpoint) in the body frame, so
/// torque-free motion keeps its kinetic energy.
/// Throws IntegrationError on non-finite input or dt <= 0.
RigidBodyState integrate_step(const RigidBodyState& state, const Vec3& force, const Vec3& torque,
                              double dt);

Vec3 world_to_body(const RigidBodyState& state, const Vec3& v);
Vec3 body_to_world(const RigidBodyState& state, const Vec3& v);

BodyAxes body_axes(const RigidBodyState& state);
BodyAxes body_axes(const Quat& orientation);

/// Heading about world y (rad), positive toward +x. 0 when facing +z.
double heading_angle(const Quat& orientation);

/// (v_now - v_prev) / dt. Throws std::invalid_argument when dt <= 0.
Vec3 finite_difference_accel(const Vec3& v_now, const Vec3& v_prev, double dt);

/// Rotational kinetic energy 0.5 w^T I w with I in world frame.
double rotational_energy(const RigidBodyState& state);

}  // namespace surfsim
