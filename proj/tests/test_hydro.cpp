#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "surfsim/hydro.hpp"

using namespace surfsim;

namespace {

RigidBodyState floating(const BoardGeometry& g) {
    RigidBodyState s;
    s.position.y = flat_water_equilibrium_height(g, s.mass);
    return s;
}

}  // namespace

TEST_CASE("probe submerged fraction is a smoothstep over the probe height") {
    const double h = 0.05;
    CHECK(probe_submerged_fraction(0.0, h) == doctest::Approx(0.5));
    CHECK(probe_submerged_fraction(-h / 2, h) == 0.0);
    CHECK(probe_submerged_fraction(-1.0, h) == 0.0);
    CHECK(probe_submerged_fraction(h / 2, h) == 1.0);
    CHECK(probe_submerged_fraction(1.0, h) == 1.0);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double f = probe_submerged_fraction(-h / 2 + h * i / 100.0, h);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("default geometry floats 60 percent submerged") {
    const BoardGeometry g = default_board_geometry();
    CHECK(g.probes.size() == 6);
    CHECK(g.total_volume == doctest::Approx(kDefaultMass / (kWaterDensity * 0.6)));
    double sum = 0.0;
    for (const auto& p : g.probes) sum += p.volume;
    CHECK(sum == doctest::Approx(g.total_volume));
    CHECK_NOTHROW(validate(g, kDefaultMass));
}

TEST_CASE("equilibrium height balances weight") {
    const BoardGeometry g = default_board_geometry();
    const RigidBodyState s = floating(g);
    const OceanConfig flat;
    const Wrench w = buoyancy_wrench(g, s, flat, 0.0);
    CHECK(w.force.y == doctest::Approx(s.mass * g.gravity).epsilon(1e-9));
    CHECK(submerged_volume(g, s, flat, 0.0) / g.total_volume == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(w.torque.norm() < 1e-9);
}

TEST_CASE("buoyancy restores a tilted board") {
    const BoardGeometry g = default_board_geometry();
    const OceanConfig flat;
    RigidBodyState s = floating(g);

    s.orientation = Quat::from_axis_angle(kUnitZ, 0.05);  // right side raised
    CHECK(buoyancy_wrench(g, s, flat, 0.0).torque.z < 0.0);

    s.orientation = Quat::from_axis_angle(kUnitX, 0.05);  // nose down
    CHECK(buoyancy_wrench(g, s, flat, 0.0).torque.x < 0.0);
}

TEST_CASE("drag is zero out of the water") {
    const BoardGeometry g = default_board_geometry();
    RigidBodyState s;
    s.position.y = 2.0;
    s.linear_velocity = {1.0, 2.0, 3.0};
    s.angular_velocity = {0.3, 0.3, 0.3};
    const Wrench w = drag_wrench(g, s, {}, 0.0);
    CHECK(w.force == Vec3{});
    CHECK(w.torque == Vec3{});
}

TEST_CASE("drag per axis follows the linear plus quadratic law") {
    const BoardGeometry g = default_board_geometry();
    RigidBodyState s = floating(g);
    s.linear_velocity = {0.0, 0.0, 1.7};
    const Wrench w = drag_wrench(g, s, {}, 0.0);
    CHECK(w.force.z == doctest::Approx(-(g.drag_linear.z + g.drag_quadratic.z * 1.7) * 1.7));
    CHECK(w.force.x == 0.0);

    s.linear_velocity = {};
    s.angular_velocity = {0.0, 0.4, 0.0};
    CHECK(drag_wrench(g, s, {}, 0.0).torque.y == doctest::Approx(-g.angular_drag * 0.4));
}

TEST_CASE("terminal speed root balances a constant thrust") {
    const BoardGeometry g = default_board_geometry();
    const double thrust = 300.0;
    const double a = g.drag_quadratic.z;
    const double b = g.drag_linear.z;
    const double v = (-b + std::sqrt(b * b + 4 * a * thrust)) / (2 * a);
    RigidBodyState s = floating(g);
    s.linear_velocity = {0.0, 0.0, v};
    CHECK(drag_wrench(g, s, {}, 0.0).force.z + thrust == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("geometry validation") {
    const BoardGeometry g = default_board_geometry();
    CHECK_THROWS_AS(validate(g, 1000.0), std::invalid_argument);
    BoardGeometry bad = g;
    bad.drag_linear.x = -1.0;
    CHECK_THROWS_AS(validate(bad, kDefaultMass), std::invalid_argument);
    bad = g;
    bad.total_volume *= 2.0;
    CHECK_THROWS_AS(validate(bad, kDefaultMass), std::invalid_argument);
}
