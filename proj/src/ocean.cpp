#include "surfsim/ocean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "surfsim/rng.hpp"

namespace surfsim {

double WaveComponent::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

double WaveComponent::angular_frequency(double gravity) const {
    return std::sqrt(gravity * wavenumber());
}

std::string_view to_string(OceanPreset preset) {
    switch (preset) {
        case OceanPreset::flat:
            return "flat";
        case OceanPreset::ripples:
            return "ripples";
        case OceanPreset::swell:
            return "swell";
    }
    return "flat";
}

OceanPreset parse_ocean_preset(std::string_view name) {
    if (name == "flat") return OceanPreset::flat;
    if (name == "ripples") return OceanPreset::ripples;
    if (name == "swell") return OceanPreset::swell;
    throw std::invalid_argument("unknown ocean preset '" + std::string(name) +
                                "' (expected flat, ripples or swell)");
}

void validate(const OceanConfig& config) {
    if (config.components.size() > kMaxWaveComponents) {
        throw std::invalid_argument("ocean: at most 64 wave components");
    }
    if (!(config.gravity > 0.0)) {
        throw std::invalid_argument("ocean: gravity must be > 0");
    }
    double chop = 0.0;
    for (const auto& c : config.components) {
        if (!(c.amplitude >= 0.0)) throw std::invalid_argument("ocean: amplitude must be >= 0");
        if (!(c.wavelength > 0.0)) throw std::invalid_argument("ocean: wavelength must be > 0");
        if (!(c.steepness >= 0.0 && c.steepness <= 1.0)) {
            throw std::invalid_argument("ocean: steepness must be in [0,1]");
        }
        if (std::abs(c.direction.y) > 1e-9 || std::abs(c.direction.norm() - 1.0) > 1e-9) {
            throw std::invalid_argument("ocean: direction must be a unit vector in the xz-plane");
        }
        chop += c.steepness * c.amplitude * c.wavenumber();
    }
    if (chop > 1.0 + 1e-12) {
        throw std::invalid_argument("ocean: sum of steepness*amplitude*k must be <= 1");
    }
}

std::size_t default_component_count(OceanPreset preset) {
    switch (preset) {
        case OceanPreset::flat:
            return 0;
        case OceanPreset::ripples:
            return 12;
        case OceanPreset::swell:
            return 6;
    }
    return 0;
}

OceanConfig spectrum_sample(std::uint64_t seed, OceanPreset preset, std::size_t n_components) {
    OceanConfig cfg;
    cfg.seed = seed;
    cfg.ripples_enabled = preset == OceanPreset::ripples;
    if (preset == OceanPreset::flat) {
        return cfg;
    }
    n_components = std::min(n_components, kMaxWaveComponents);

    SeededRng rng(seed);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double wind = rng.uniform(0.0, two_pi);
    // Directional spread about the wind heading.
    const double spread = preset == OceanPreset::ripples ? std::numbers::pi / 3.0 : std::numbers::pi / 8.0;

    for (std::size_t i = 0; i < n_components; ++i) {
        WaveComponent c;
        if (preset == OceanPreset::ripples) {
            c.wavelength = rng.uniform(0.5, 3.0);
            // Slope A*k capped at 0.1 keeps short ripples gentle.
            const double cap = std::min(0.05, 0.1 / c.wavenumber());
            c.amplitude = cap * rng.uniform(0.3, 1.0);
        } else {
            c.wavelength = rng.uniform(40.0, 120.0);
            c.amplitude = rng.uniform(0.3, 1.0);
        }
        const double heading = wind + rng.uniform(-spread, spread);
        c.direction = {std::sin(heading), 0.0, std::cos(heading)};
        c.phase = rng.uniform(0.0, two_pi);
        c.steepness = rng.uniform(0.2, 0.8);
        cfg.components.push_back(c);
    }

    double chop = 0.0;
    for (const auto& c : cfg.components) {
        chop += c.steepness * c.amplitude * c.wavenumber();
    }
    constexpr double kChopLimit = 0.8;
    if (chop > kChopLimit) {
        const double s = kChopLimit / chop;
        for (auto& c : cfg.components) {
            c.steepness *= s;
        }
    }
    return cfg;
}

namespace {

double phase_of(const WaveComponent& c, double x, double z, double t, double gravity) {
    const double k = c.wavenumber();
    return k * (c.direction.x * x + c.direction.z * z) - c.angular_frequency(gravity) * t + c.phase;
}

}  // namespace

double height_at(const OceanConfig& config, double x, double z, double t) {
    double h = 0.0;
    for (const auto& c : config.components) {
        h += c.amplitude * std::cos(phase_of(c, x, z, t, config.gravity));
    }
    return h;
}

Vec3 displaced_position_at(const OceanConfig& config, double x, double z, double t) {
    Vec3 p{x, 0.0, z};
    for (const auto& c : config.components) {
        const double th = phase_of(c, x, z, t, config.gravity);
        const double chop = c.steepness * c.amplitude * std::sin(th);
        p.x -= chop * c.direction.x;
        p.z -= chop * c.direction.z;
        p.y += c.amplitude * std::cos(th);
    }
    return p;
}

Vec3 normal_at(const OceanConfig& config, double x, double z, double t) {
    double dhdx = 0.0;
    double dhdz = 0.0;
    for (const auto& c : config.components) {
        const double s = c.amplitude * c.wavenumber() * std::sin(phase_of(c, x, z, t, config.gravity));
        dhdx -= s * c.direction.x;
        dhdz -= s * c.direction.z;
    }
    return Vec3{-dhdx, 1.0, -dhdz}.normalized();
}

Vec3 surface_velocity_at(const OceanConfig& config, double x, double z, double t) {
    Vec3 v;
    for (const auto& c : config.components) {
        const double th = phase_of(c, x, z, t, config.gravity);
        const double w = c.angular_frequency(config.gravity);
        const double horiz = c.steepness * c.amplitude * w * std::cos(th);
        v.x += horiz * c.direction.x;
        v.z += horiz * c.direction.z;
        v.y += c.amplitude * w * std::sin(th);
    }
    return v;
}

}  // namespace surfsim
