#include "surfsim/platform.hpp"

#include <cmath>
#include <stdexcept>

namespace surfsim {

PlatformState actuate(const PlatformState& state, const PlatformFrame& frame,
                      const PlatformEnvelope& envelope, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("actuate: dt must be > 0");
    }
    if (!within_envelope(frame, envelope)) {
        throw std::invalid_argument("actuate: commanded frame outside the platform envelope");
    }
    PlatformState next = state;
    next.achieved.t = frame.t;
    for (Dof d : kAllDofs) {
        const double tau = state.tau[static_cast<std::size_t>(d)];
        if (!(tau > 0.0)) {
            throw std::invalid_argument("actuate: time constants must be > 0");
        }
        const double gain = -std::expm1(-dt / tau);
        next.achieved[d] = state.achieved[d] + (frame[d] - state.achieved[d]) * gain;
    }
    return next;
}

std::array<double, kDofCount> tracking_error(std::span<const PlatformFrame> commanded,
                                             std::span<const PlatformFrame> achieved) {
    if (commanded.size() != achieved.size()) {
        throw std::invalid_argument("tracking_error: stream lengths differ");
    }
    if (commanded.empty()) {
        throw std::invalid_argument("tracking_error: empty streams");
    }
    std::array<double, kDofCount> rms{};
    for (std::size_t i = 0; i < commanded.size(); ++i) {
        for (Dof d : kAllDofs) {
            const double e = commanded[i][d] - achieved[i][d];
            rms[static_cast<std::size_t>(d)] += e * e;
        }
    }
    for (double& r : rms) {
        r = std::sqrt(r / static_cast<double>(commanded.size()));
    }
    return rms;
}

}  // namespace surfsim
