// Full-loop simulation and the acceleration-trial experiment structure.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "surfsim/config.hpp"
#include "surfsim/platform.hpp"

namespace surfsim {

enum class AccelLevel { LA, MA, HA };
inline constexpr std::array<AccelLevel, 3> kAllLevels{AccelLevel::LA, AccelLevel::MA, AccelLevel::HA};

/// 0.5, 1.5 and 3.0 m/s^2.
double level_value(AccelLevel level);
std::string_view to_string(AccelLevel level);
/// Accepts LA/MA/HA (case-insensitive). Throws std::invalid_argument.
AccelLevel parse_level(std::string_view name);

enum class Posture { sitting, kneeling, standing };
inline constexpr std::array<Posture, 3> kAllPostures{Posture::sitting, Posture::kneeling, Posture::standing};
std::string_view to_string(Posture posture);
Posture parse_posture(std::string_view name);

/// Posture is recorded only; it has no effect on the dynamics.
struct TrialSpec {
    double level{0.5};  // m/s^2
    bool ripples{false};
    Posture posture{Posture::sitting};
    double accel_duration{5.0};  // s; deceleration mirrors it
    double settle_time{1.0};     // s at rest after the deceleration

    bool operator==(const TrialSpec&) const = default;
};

TrialSpec make_trial(AccelLevel level, bool ripples, Posture posture = Posture::sitting);
void validate(const TrialSpec& spec);

/// Board left to float with no input.
struct PassiveScenario {
    double duration{30.0};
    std::optional<bool> ripples;  // overrides the config preset when set
};

/// Prescribed acceleration along the board heading, piecewise constant per step.
struct ScriptedScenario {
    TrialSpec spec;
    std::vector<double> accel;  // m/s^2 for step k, covering [k dt, (k+1) dt)

    [[nodiscard]] double duration(double dt) const { return static_cast<double>(accel.size()) * dt; }
};

/// Hand trace in board-mounted tracking coordinates.
struct PaddleScenario {
    std::vector<HandSample> trace;
    double duration{0.0};  // 0 = trace length
};

using Scenario = std::variant<PassiveScenario, ScriptedScenario, PaddleScenario>;

/// +level for accel_duration, -level for the same time, then rest.
ScriptedScenario generate_trial(const TrialSpec& spec, double dt);

enum WrenchSource : unsigned {
    kSourceBuoyancy = 1U << 0,
    kSourceDrag = 1U << 1,
    kSourcePaddle = 1U << 2,
    kSourceScript = 1U << 3,
};

struct LogRow {
    double t{0.0};
    RigidBodyState state;
    BoardKinematics raw;
    BoardKinematics filtered;
    PlatformFrame requested;
    PlatformFrame commanded;
    PlatformFrame achieved;
    unsigned sources{0};
};

struct SimulationLog {
    double dt{kDefaultTimestep};
    std::vector<LogRow> rows;

    [[nodiscard]] std::vector<PlatformFrame> commanded_frames() const;
    [[nodiscard]] std::vector<PlatformFrame> achieved_frames() const;
    [[nodiscard]] std::vector<KinematicSample> kinematics() const;
};

struct RunOptions {
    std::optional<RigidBodyState> initial_state;
    std::optional<OceanConfig> ocean;  // overrides the config's ocean
};

/// Fixed-step loop: ocean -> wrenches -> integrate -> differentiate -> EMA ->
/// map -> clamp -> actuate -> log. Row 0 is the initial state.
/// Throws SimulationError if the state turns non-finite.
SimulationLog run_scenario(const SimConfig& config, const Scenario& scenario, const RunOptions& options = {});

/// Convenience: generate_trial + run_scenario.
SimulationLog run_trial(const SimConfig& config, const TrialSpec& spec);

struct TrialRun {
    TrialSpec spec;
    SimulationLog log;
};

struct ConditionMetrics {
    TrialSpec spec;
    double mean_surge_requested{0.0};  // sustained phase, pre-clamp
    double mean_surge_commanded{0.0};
    double onset_lag{0.0};             // s until commanded surge reaches 90% of its sustained mean
    std::array<double, kDofCount> rms_commanded{};
};

struct TrialReport {
    std::vector<ConditionMetrics> conditions;
    // Per ripple state (index 0 = off, 1 = on).
    std::array<std::optional<double>, 2> ratio_ma_la;
    std::array<std::optional<double>, 2> ratio_ha_la;
    // Per level: ripple-on RMS minus ripple-off RMS of the commanded channels.
    std::array<std::optional<std::array<double, kDofCount>>, 3> ripple_rms_delta;
    std::vector<std::string> missing;
};

/// Sustained phase is [sustain_start, accel_duration). Throws
/// std::invalid_argument when `runs` is empty.
TrialReport trial_metrics(const std::vector<TrialRun>& runs, double sustain_start = 1.0);

nlohmann::json to_json(const TrialReport& report);

/// Order-3 Graeco-Latin square: levels[r][c] and greek[r][c] are each Latin
/// and every (level, greek) pair occurs once.
struct GraecoLatinSquare {
    std::array<std::array<int, 3>, 3> levels{};
    std::array<std::array<int, 3>, 3> greek{};
};

struct SessionTrial {
    int block{0};
    Posture posture{Posture::sitting};
    AccelLevel level{AccelLevel::LA};
    bool ripples{false};

    bool operator==(const SessionTrial&) const = default;
};

/// Cyclic square with seeded row order. Each row becomes one posture block:
/// the Latin row orders the levels for the first ripple half, the Greek row
/// orders them for the second half.
GraecoLatinSquare graeco_latin_square(std::uint64_t seed);

/// 6 trials per block: every level once with and once without ripples.
std::vector<SessionTrial> graeco_latin_order(std::uint64_t seed);

nlohmann::json to_json(const std::vector<SessionTrial>& order, std::uint64_t seed);

}  // namespace surfsim
