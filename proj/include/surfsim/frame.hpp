// Six-DoF platform command and its admissible envelope.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace surfsim {

enum class Dof : std::size_t { surge, sway, heave, pitch, roll, yaw };
inline constexpr std::size_t kDofCount = 6;
inline constexpr std::array<Dof, kDofCount> kAllDofs{Dof::surge, Dof::sway,  Dof::heave,
                                                      Dof::pitch, Dof::roll, Dof::yaw};

std::string_view to_string(Dof dof);

/// Translations in m, rotations in rad.
struct PlatformFrame {
    double t{0.0};
    double surge{0.0};
    double sway{0.0};
    double heave{0.0};
    double pitch{0.0};
    double roll{0.0};
    double yaw{0.0};

    bool operator==(const PlatformFrame&) const = default;

    double& operator[](Dof d);
    double operator[](Dof d) const;
};

struct DofLimits {
    double min{0.0};
    double max{0.0};
    double max_rate{0.0};  // per second

    bool operator==(const DofLimits&) const = default;
};

struct PlatformEnvelope {
    std::array<DofLimits, kDofCount> limits{};

    bool operator==(const PlatformEnvelope&) const = default;

    DofLimits& operator[](Dof d) { return limits[static_cast<std::size_t>(d)]; }
    const DofLimits& operator[](Dof d) const { return limits[static_cast<std::size_t>(d)]; }
};

/// +/-0.1 m translations, +/-15 deg pitch/roll, +/-20 deg yaw,
/// 0.5 m/s and 60 deg/s rate limits.
PlatformEnvelope default_envelope();

/// Throws std::invalid_argument unless min < max and max_rate > 0 per DoF.
void validate(const PlatformEnvelope& envelope);

/// True when every DoF is inside the position limits.
bool within_envelope(const PlatformFrame& frame, const PlatformEnvelope& envelope);

/// Number of frames that break a position limit or move faster than the
/// rate limit relative to the preceding frame (the first frame is checked
/// against `initial`). A 1e-12 slack absorbs rounding in the rate test.
std::size_t envelope_violations(std::span<const PlatformFrame> frames,
                                const PlatformEnvelope& envelope, double dt,
                                const PlatformFrame& initial = {});

}  // namespace surfsim
