#include "surfsim/frame.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace surfsim {

namespace {

constexpr std::array<double PlatformFrame::*, kDofCount> kMembers{
    &PlatformFrame::surge, &PlatformFrame::sway, &PlatformFrame::heave,
    &PlatformFrame::pitch, &PlatformFrame::roll, &PlatformFrame::yaw};

constexpr double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

std::string_view to_string(Dof dof) {
    static constexpr std::array<std::string_view, kDofCount> names{"surge", "sway", "heave",
                                                                   "pitch", "roll", "yaw"};
    return names[static_cast<std::size_t>(dof)];
}

double& PlatformFrame::operator[](Dof d) { return this->*kMembers[static_cast<std::size_t>(d)]; }
double PlatformFrame::operator[](Dof d) const { return this->*kMembers[static_cast<std::size_t>(d)]; }

PlatformEnvelope default_envelope() {
    PlatformEnvelope e;
    e[Dof::surge] = {-0.1, 0.1, 0.5};
    e[Dof::sway] = {-0.1, 0.1, 0.5};
    e[Dof::heave] = {-0.1, 0.1, 0.5};
    e[Dof::pitch] = {-deg(15.0), deg(15.0), deg(60.0)};
    e[Dof::roll] = {-deg(15.0), deg(15.0), deg(60.0)};
    e[Dof::yaw] = {-deg(20.0), deg(20.0), deg(60.0)};
    return e;
}

void validate(const PlatformEnvelope& envelope) {
    for (Dof d : kAllDofs) {
        const auto& l = envelope[d];
        if (!(l.min < l.max)) {
            throw std::invalid_argument("envelope." + std::string(to_string(d)) + ": min must be < max");
        }
        if (!(l.max_rate > 0.0)) {
            throw std::invalid_argument("envelope." + std::string(to_string(d)) + ": rate must be > 0");
        }
    }
}

bool within_envelope(const PlatformFrame& frame, const PlatformEnvelope& envelope) {
    for (Dof d : kAllDofs) {
        const double v = frame[d];
        if (!(v >= envelope[d].min && v <= envelope[d].max)) {
            return false;
        }
    }
    return true;
}

std::size_t envelope_violations(std::span<const PlatformFrame> frames,
                                const PlatformEnvelope& envelope, double dt,
                                const PlatformFrame& initial) {
    std::size_t count = 0;
    const PlatformFrame* prev = &initial;
    for (const auto& f : frames) {
        bool bad = !within_envelope(f, envelope);
        for (Dof d : kAllDofs) {
            if (std::abs(f[d] - (*prev)[d]) > envelope[d].max_rate * dt + 1e-12) {
                bad = true;
            }
        }
        count += bad ? 1 : 0;
        prev = &f;
    }
    return count;
}

}  // namespace surfsim
