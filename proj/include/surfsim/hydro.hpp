// Buoyancy and drag acting on the board: Archimedes probe model plus a
// per-axis linear/quadratic drag in the board frame.
#pragma once

#include <vector>

#include "surfsim/kinematics.hpp"
#include "surfsim/ocean.hpp"

namespace surfsim {

inline constexpr double kWaterDensity = 1000.0;

struct BuoyancyProbe {
    Vec3 position;  // body frame, m
    double volume{0.0};  // m^3

    bool operator==(const BuoyancyProbe&) const = default;
};

struct BoardGeometry {
    std::vector<BuoyancyProbe> probes;
    double total_volume{0.0};              // m^3
    double probe_height{0.05};             // m, submersion ramps over this height
    Vec3 drag_linear{60.0, 1500.0, 10.0};  // N s/m per body axis
    Vec3 drag_quadratic{60.0, 200.0, 25.0};  // N s^2/m^2 per body axis
    double angular_drag{150.0};            // N m s/rad
    double water_density{kWaterDensity};
    double gravity{kGravity};

    bool operator==(const BoardGeometry&) const = default;
};

struct Wrench {
    Vec3 force;
    Vec3 torque;

    Wrench& operator+=(const Wrench& o) {
        force += o.force;
        torque += o.torque;
        return *this;
    }
};

/// Rectangular grid of probes (nx across, nz along) on the board mid-plane,
/// with total volume sized so `mass` floats at `float_fraction` submerged.
BoardGeometry make_grid_geometry(double mass, double length, double width, int nx, int nz,
                                 double float_fraction);

/// 3x2 grid over a 2.2 m x 0.6 m board, 150 kg floating 60% submerged.
BoardGeometry default_board_geometry();

/// Throws std::invalid_argument when volumes are inconsistent, a coefficient
/// is negative, or the board would sink under `mass`.
void validate(const BoardGeometry& geometry, double mass);

/// Submerged fraction of one probe at the given depth below the local
/// surface. C1 smoothstep over [-h/2, +h/2]; 0.5 at the surface.
double probe_submerged_fraction(double depth, double probe_height);

/// Total displaced volume (m^3) at the current pose.
double submerged_volume(const BoardGeometry& geometry, const RigidBodyState& state,
                        const OceanConfig& ocean, double t);

Wrench buoyancy_wrench(const BoardGeometry& geometry, const RigidBodyState& state,
                       const OceanConfig& ocean, double t);

/// Zero unless at least one probe is wet.
Wrench drag_wrench(const BoardGeometry& geometry, const RigidBodyState& state,
                   const OceanConfig& ocean, double t);

/// Centre height at which a level board on still water is in vertical
/// equilibrium (bisection on net buoyancy).
double flat_water_equilibrium_height(const BoardGeometry& geometry, double mass);

}  // namespace surfsim
