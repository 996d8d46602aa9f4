// Simulated motion platform: first-order lag per DoF toward the command.
#pragma once

#include <array>
#include <span>

#include "surfsim/frame.hpp"

namespace surfsim {

struct PlatformState {
    PlatformFrame achieved;
    std::array<double, kDofCount> tau{0.05, 0.05, 0.05, 0.05, 0.05, 0.05};  // s
};

/// achieved += (commanded - achieved) * (1 - exp(-dt / tau)) per DoF.
/// Throws std::invalid_argument when the frame is outside the envelope, dt or
/// a time constant is not positive.
PlatformState actuate(const PlatformState& state, const PlatformFrame& frame,
                      const PlatformEnvelope& envelope, double dt);

/// Per-DoF RMS of commanded - achieved. Throws std::invalid_argument on a
/// length mismatch or empty streams.
std::array<double, kDofCount> tracking_error(std::span<const PlatformFrame> commanded,
                                             std::span<const PlatformFrame> achieved);

}  // namespace surfsim
