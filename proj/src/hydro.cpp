#include "surfsim/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace surfsim {

BoardGeometry make_grid_geometry(double mass, double length, double width, int nx, int nz,
                                 double float_fraction) {
    if (nx < 1 || nz < 1) {
        throw std::invalid_argument("probe grid needs at least one probe per axis");
    }
    if (!(float_fraction > 0.0 && float_fraction < 1.0)) {
        throw std::invalid_argument("float_fraction must be in (0,1)");
    }
    BoardGeometry g;
    g.total_volume = mass / (kWaterDensity * float_fraction);
    const double per_probe = g.total_volume / static_cast<double>(nx * nz);
    for (int iz = 0; iz < nz; ++iz) {
        for (int ix = 0; ix < nx; ++ix) {
            // Cell centres.
            const double x = width * ((ix + 0.5) / nx - 0.5);
            const double z = length * ((iz + 0.5) / nz - 0.5);
            g.probes.push_back({{x, 0.0, z}, per_probe});
        }
    }
    // Re-derive the total from the probes so the sum matches exactly.
    double sum = 0.0;
    for (const auto& p : g.probes) sum += p.volume;
    g.total_volume = sum;
    return g;
}

BoardGeometry default_board_geometry() {
    return make_grid_geometry(kDefaultMass, 2.2, 0.6, 2, 3, 0.6);
}

void validate(const BoardGeometry& geometry, double mass) {
    if (geometry.probes.empty()) {
        throw std::invalid_argument("board geometry needs at least one probe");
    }
    double sum = 0.0;
    for (const auto& p : geometry.probes) {
        if (!(p.volume > 0.0)) throw std::invalid_argument("probe volume must be > 0");
        if (!p.position.is_finite()) throw std::invalid_argument("probe position must be finite");
        sum += p.volume;
    }
    if (std::abs(sum - geometry.total_volume) > 1e-9) {
        throw std::invalid_argument("probe volumes must sum to total_volume");
    }
    if (!(geometry.probe_height > 0.0)) throw std::invalid_argument("probe_height must be > 0");
    const auto nonneg = [](const Vec3& v) { return v.x >= 0.0 && v.y >= 0.0 && v.z >= 0.0; };
    if (!nonneg(geometry.drag_linear) || !nonneg(geometry.drag_quadratic) ||
        !(geometry.angular_drag >= 0.0)) {
        throw std::invalid_argument("drag coefficients must be >= 0");
    }
    if (!(geometry.water_density > 0.0) || !(geometry.gravity > 0.0)) {
        throw std::invalid_argument("water_density and gravity must be > 0");
    }
    if (!(geometry.water_density * geometry.total_volume > mass)) {
        throw std::invalid_argument("board does not float: water_density*total_volume must exceed mass");
    }
}

double probe_submerged_fraction(double depth, double probe_height) {
    const double s = std::clamp(depth / probe_height + 0.5, 0.0, 1.0);
    return s * s * (3.0 - 2.0 * s);
}

namespace {

template <typename Fn>
void for_each_probe(const BoardGeometry& geometry, const RigidBodyState& state,
                    const OceanConfig& ocean, double t, Fn&& fn) {
    for (const auto& probe : geometry.probes) {
        const Vec3 arm = body_to_world(state, probe.position);
        const Vec3 p = state.position + arm;
        const double depth = height_at(ocean, p.x, p.z, t) - p.y;
        fn(probe, arm, probe_submerged_fraction(depth, geometry.probe_height));
    }
}

}  // namespace

double submerged_volume(const BoardGeometry& geometry, const RigidBodyState& state,
                        const OceanConfig& ocean, double t) {
    double v = 0.0;
    for_each_probe(geometry, state, ocean, t,
                   [&](const BuoyancyProbe& probe, const Vec3&, double frac) { v += probe.volume * frac; });
    return v;
}

Wrench buoyancy_wrench(const BoardGeometry& geometry, const RigidBodyState& state,
                       const OceanConfig& ocean, double t) {
    Wrench w;
    const double rho_g = geometry.water_density * geometry.gravity;
    for_each_probe(geometry, state, ocean, t,
                   [&](const BuoyancyProbe& probe, const Vec3& arm, double frac) {
                       if (frac <= 0.0) return;
                       const Vec3 f{0.0, rho_g * probe.volume * frac, 0.0};
                       w.force += f;
                       w.torque += arm.cross(f);
                   });
    return w;
}

Wrench drag_wrench(const BoardGeometry& geometry, const RigidBodyState& state,
                   const OceanConfig& ocean, double t) {
    bool wet = false;
    for_each_probe(geometry, state, ocean, t,
                   [&](const BuoyancyProbe&, const Vec3&, double frac) { wet = wet || frac > 0.0; });
    if (!wet) {
        return {};
    }
    const Vec3 v_rel =
        state.linear_velocity - surface_velocity_at(ocean, state.position.x, state.position.z, t);
    const double speed = v_rel.norm();
    const Vec3 b = world_to_body(state, v_rel);
    const Vec3& d1 = geometry.drag_linear;
    const Vec3& d2 = geometry.drag_quadratic;
    const Vec3 f_body{-(d1.x + d2.x * speed) * b.x, -(d1.y + d2.y * speed) * b.y,
                      -(d1.z + d2.z * speed) * b.z};
    return {body_to_world(state, f_body), state.angular_velocity * -geometry.angular_drag};
}

double flat_water_equilibrium_height(const BoardGeometry& geometry, double mass) {
    const OceanConfig flat;
    RigidBodyState probe_state;
    probe_state.mass = mass;
    const double target = mass / geometry.water_density;
    double lo = -10.0;  // fully under: too much buoyancy
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        probe_state.position.y = mid;
        if (submerged_volume(geometry, probe_state, flat, 0.0) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace surfsim
