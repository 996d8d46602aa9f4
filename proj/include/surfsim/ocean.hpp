// Parametric ocean surface: sum of Gerstner components with closed-form
// height, chop displacement, normal and surface velocity.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "surfsim/vec3.hpp"

namespace surfsim {

inline constexpr double kGravity = 9.81;
inline constexpr std::size_t kMaxWaveComponents = 64;

struct WaveComponent {
    double amplitude{0.0};   // m
    double wavelength{1.0};  // m
    Vec3 direction{kUnitZ};  // unit, xz-plane
    double phase{0.0};       // rad
    double steepness{0.0};   // [0, 1], scales horizontal chop

    bool operator==(const WaveComponent&) const = default;

    [[nodiscard]] double wavenumber() const;
    /// Deep-water dispersion: omega = sqrt(g k).
    [[nodiscard]] double angular_frequency(double gravity = kGravity) const;
};

enum class OceanPreset { flat, ripples, swell };

std::string_view to_string(OceanPreset preset);
/// Throws std::invalid_argument on an unknown name.
OceanPreset parse_ocean_preset(std::string_view name);

struct OceanConfig {
    std::vector<WaveComponent> components;
    double gravity{kGravity};
    std::uint64_t seed{0};
    bool ripples_enabled{false};

    bool operator==(const OceanConfig&) const = default;
};

/// Throws std::invalid_argument if any component or the chop bound
/// (sum of steepness * amplitude * k <= 1) is violated.
void validate(const OceanConfig& config);

/// Seeded draw from a parametric directional spectrum. Ripples: amplitudes
/// <= 0.05 m, wavelengths 0.5..3 m. Swell: amplitudes 0.3..1 m, wavelengths
/// 40..120 m. Components cluster around a seeded wind direction.
OceanConfig spectrum_sample(std::uint64_t seed, OceanPreset preset, std::size_t n_components);

/// Default component counts used when a preset is requested by name.
std::size_t default_component_count(OceanPreset preset);

double height_at(const OceanConfig& config, double x, double z, double t);
/// Gerstner particle position of the surface point with rest position (x, z).
Vec3 displaced_position_at(const OceanConfig& config, double x, double z, double t);
/// Analytic unit normal of the height field.
Vec3 normal_at(const OceanConfig& config, double x, double z, double t);
/// Gerstner particle velocity; y component is d(height)/dt.
Vec3 surface_velocity_at(const OceanConfig& config, double x, double z, double t);

}  // namespace surfsim
