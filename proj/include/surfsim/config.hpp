// Simulation configuration: one JSON document, every key optional.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "surfsim/cueing.hpp"
#include "surfsim/hydro.hpp"
#include "surfsim/ocean.hpp"
#include "surfsim/paddle.hpp"
#include "surfsim/washout.hpp"

namespace surfsim {

inline constexpr int kConfigVersion = 1;

struct OceanSettings {
    OceanPreset preset{OceanPreset::flat};
    std::uint64_t seed{0};
    std::size_t components{0};  // 0 = preset default

    bool operator==(const OceanSettings&) const = default;
};

struct OutputPaths {
    std::string log;
    std::string report;
    std::string frames;

    bool operator==(const OutputPaths&) const = default;
};

struct SimConfig {
    int version{kConfigVersion};
    double timestep{kDefaultTimestep};
    double mass{kDefaultMass};
    Vec3 inertia{slab_inertia(kDefaultMass, 0.6, 0.1, 2.2)};
    BoardGeometry board{default_board_geometry()};
    PaddleConfig paddle;
    CueingParams cueing;
    WashoutParams washout;
    std::array<double, kDofCount> platform_tau{0.05, 0.05, 0.05, 0.05, 0.05, 0.05};
    OceanSettings ocean;
    OutputPaths output;

    bool operator==(const SimConfig&) const = default;
};

/// Re-checks every module constraint. Throws ConfigError naming the key.
void validate(const SimConfig& config);

/// Throws ConfigError on unknown keys, wrong types or violated bounds.
SimConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const SimConfig& config);

/// An empty (or whitespace-only) file yields the defaults.
SimConfig load_config(const std::filesystem::path& path);
void save_config(const SimConfig& config, const std::filesystem::path& path);

/// Ocean surface described by the config's preset, seed and component count.
OceanConfig make_ocean(const OceanSettings& settings);

/// Body state at rest, level, at the flat-water equilibrium height.
RigidBodyState initial_board_state(const SimConfig& config);

}  // namespace surfsim
