#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "surfsim/ocean.hpp"

using namespace surfsim;

namespace {

OceanConfig single_wave() {
    OceanConfig o;
    WaveComponent w;
    w.amplitude = 0.2;
    w.wavelength = 8.0;
    w.direction = Vec3{1.0, 0.0, 1.0}.normalized();
    w.phase = 0.4;
    w.steepness = 0.5;
    o.components.push_back(w);
    return o;
}

}  // namespace

TEST_CASE("flat water") {
    const OceanConfig flat;
    CHECK(height_at(flat, 3.0, -2.0, 7.0) == 0.0);
    CHECK(normal_at(flat, 3.0, -2.0, 7.0) == kUnitY);
    CHECK(surface_velocity_at(flat, 3.0, -2.0, 7.0) == Vec3{});
}

TEST_CASE("deep-water dispersion") {
    WaveComponent w;
    w.wavelength = 2.0 * std::numbers::pi;
    CHECK(w.wavenumber() == doctest::Approx(1.0));
    CHECK(w.angular_frequency() == doctest::Approx(std::sqrt(kGravity)));
}

TEST_CASE("single component matches the cosine form") {
    const OceanConfig o = single_wave();
    const WaveComponent& w = o.components[0];
    const double k = w.wavenumber();
    const double om = w.angular_frequency();
    for (double t : {0.0, 0.7, 3.3}) {
        for (double x : {-2.0, 0.0, 1.5}) {
            const double z = 0.5 * x + 1.0;
            const double theta = k * (w.direction.x * x + w.direction.z * z) - om * t + w.phase;
            CHECK(height_at(o, x, z, t) == doctest::Approx(w.amplitude * std::cos(theta)).epsilon(1e-12));
        }
    }
}

TEST_CASE("single component is periodic in time") {
    const OceanConfig o = single_wave();
    const double period = 2.0 * std::numbers::pi / o.components[0].angular_frequency();
    CHECK(height_at(o, 1.0, 2.0, 0.3) == doctest::Approx(height_at(o, 1.0, 2.0, 0.3 + period)));
}

TEST_CASE("analytic normal agrees with central differences") {
    const OceanConfig o = spectrum_sample(9, OceanPreset::ripples, 12);
    const double h = 1e-6;
    for (double t : {0.0, 1.3}) {
        for (double x : {-1.0, 0.25, 2.0}) {
            const double z = 0.7 - x;
            const double dhdx = (height_at(o, x + h, z, t) - height_at(o, x - h, z, t)) / (2 * h);
            const double dhdz = (height_at(o, x, z + h, t) - height_at(o, x, z - h, t)) / (2 * h);
            const Vec3 expected = Vec3{-dhdx, 1.0, -dhdz}.normalized();
            CHECK((normal_at(o, x, z, t) - expected).norm() < 1e-6);
        }
    }
}

TEST_CASE("vertical surface velocity is dh/dt") {
    const OceanConfig o = spectrum_sample(4, OceanPreset::swell, 6);
    const double h = 1e-5;
    for (double t : {0.5, 4.0}) {
        const double dhdt = (height_at(o, 3.0, -1.0, t + h) - height_at(o, 3.0, -1.0, t - h)) / (2 * h);
        CHECK(surface_velocity_at(o, 3.0, -1.0, t).y == doctest::Approx(dhdt).epsilon(1e-6));
    }
}

TEST_CASE("chop displaces horizontally only by the steepness term") {
    OceanConfig o = single_wave();
    o.components[0].steepness = 0.0;
    const Vec3 p = displaced_position_at(o, 1.0, 2.0, 0.5);
    CHECK(p.x == 1.0);
    CHECK(p.z == 2.0);
    CHECK(p.y == doctest::Approx(height_at(o, 1.0, 2.0, 0.5)));
}

TEST_CASE("spectrum sampling is deterministic per seed") {
    CHECK(spectrum_sample(17, OceanPreset::ripples, 12) == spectrum_sample(17, OceanPreset::ripples, 12));
    CHECK(spectrum_sample(17, OceanPreset::ripples, 12) != spectrum_sample(18, OceanPreset::ripples, 12));
    CHECK(spectrum_sample(3, OceanPreset::flat, 0).components.empty());
    CHECK(default_component_count(OceanPreset::flat) == 0);
}

TEST_CASE("ripple spectra stay within bounds over 1000 seeds") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const OceanConfig o = spectrum_sample(seed, OceanPreset::ripples, 12);
        REQUIRE(o.components.size() == 12);
        double chop = 0.0;
        for (const auto& w : o.components) {
            CHECK(w.amplitude > 0.0);
            CHECK(w.amplitude <= 0.05);
            CHECK(w.wavelength >= 0.5);
            CHECK(w.wavelength <= 3.0);
            CHECK(std::abs(w.direction.norm() - 1.0) < 1e-12);
            CHECK(w.direction.y == 0.0);
            chop += w.steepness * w.amplitude * w.wavenumber();
        }
        CHECK(chop <= 1.0);
        CHECK_NOTHROW(validate(o));
    }
}

TEST_CASE("swell spectra stay within bounds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (const auto& w : spectrum_sample(seed, OceanPreset::swell, 6).components) {
            CHECK(w.amplitude >= 0.3);
            CHECK(w.amplitude <= 1.0);
            CHECK(w.wavelength >= 40.0);
            CHECK(w.wavelength <= 120.0);
        }
    }
}

TEST_CASE("validation") {
    OceanConfig o = single_wave();
    o.components[0].amplitude = 2.0;
    o.components[0].steepness = 1.0;
    CHECK_THROWS_AS(validate(o), std::invalid_argument);

    OceanConfig many;
    many.components.assign(kMaxWaveComponents + 1, WaveComponent{0.001, 10.0, kUnitZ, 0.0, 0.0});
    CHECK_THROWS_AS(validate(many), std::invalid_argument);

    CHECK(parse_ocean_preset("ripples") == OceanPreset::ripples);
    CHECK_THROWS_AS(parse_ocean_preset("tsunami"), std::invalid_argument);
}
