#include "surfsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "surfsim/errors.hpp"
#include "surfsim/rng.hpp"

namespace surfsim {

double level_value(AccelLevel level) {
    switch (level) {
        case AccelLevel::LA:
            return 0.5;
        case AccelLevel::MA:
            return 1.5;
        case AccelLevel::HA:
            return 3.0;
    }
    return 0.5;
}

std::string_view to_string(AccelLevel level) {
    switch (level) {
        case AccelLevel::LA:
            return "LA";
        case AccelLevel::MA:
            return "MA";
        case AccelLevel::HA:
            return "HA";
    }
    return "LA";
}

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::optional<AccelLevel> classify_level(double value) {
    for (AccelLevel l : kAllLevels) {
        if (value == level_value(l)) return l;
    }
    return std::nullopt;
}

}  // namespace

AccelLevel parse_level(std::string_view name) {
    const std::string u = upper(name);
    for (AccelLevel l : kAllLevels) {
        if (u == to_string(l)) return l;
    }
    throw std::invalid_argument("unknown acceleration level '" + std::string(name) + "' (expected LA, MA or HA)");
}

std::string_view to_string(Posture posture) {
    switch (posture) {
        case Posture::sitting:
            return "sitting";
        case Posture::kneeling:
            return "kneeling";
        case Posture::standing:
            return "standing";
    }
    return "sitting";
}

Posture parse_posture(std::string_view name) {
    for (Posture p : kAllPostures) {
        if (name == to_string(p)) return p;
    }
    throw std::invalid_argument("unknown posture '" + std::string(name) + "'");
}

TrialSpec make_trial(AccelLevel level, bool ripples, Posture posture) {
    TrialSpec s;
    s.level = level_value(level);
    s.ripples = ripples;
    s.posture = posture;
    return s;
}

void validate(const TrialSpec& spec) {
    if (!(spec.level > 0.0) || !std::isfinite(spec.level)) throw std::invalid_argument("trial level must be > 0");
    if (!(spec.accel_duration > 0.0)) throw std::invalid_argument("trial accel_duration must be > 0");
    if (!(spec.settle_time >= 0.0)) throw std::invalid_argument("trial settle_time must be >= 0");
}

ScriptedScenario generate_trial(const TrialSpec& spec, double dt) {
    validate(spec);
    if (!(dt > 0.0)) throw std::invalid_argument("generate_trial: dt must be > 0");
    const auto n_accel = static_cast<std::size_t>(std::llround(spec.accel_duration / dt));
    const auto n_settle = static_cast<std::size_t>(std::llround(spec.settle_time / dt));
    ScriptedScenario sc;
    sc.spec = spec;
    sc.accel.assign(2 * n_accel + n_settle, 0.0);
    std::fill_n(sc.accel.begin(), n_accel, spec.level);
    std::fill_n(sc.accel.begin() + static_cast<std::ptrdiff_t>(n_accel), n_accel, -spec.level);
    return sc;
}

std::vector<PlatformFrame> SimulationLog::commanded_frames() const {
    std::vector<PlatformFrame> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.commanded);
    return out;
}

std::vector<PlatformFrame> SimulationLog::achieved_frames() const {
    std::vector<PlatformFrame> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.achieved);
    return out;
}

std::vector<KinematicSample> SimulationLog::kinematics() const {
    std::vector<KinematicSample> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back({r.t, r.raw, body_axes(r.state)});
    return out;
}

namespace {

struct StepInput {
    std::size_t steps{0};
    const ScriptedScenario* script{nullptr};
    const PaddleScenario* paddle{nullptr};
    std::optional<bool> ripples;
};

StepInput describe(const Scenario& scenario, double dt) {
    StepInput in;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PassiveScenario>) {
                if (!(s.duration >= 0.0)) throw std::invalid_argument("passive scenario: duration must be >= 0");
                in.steps = static_cast<std::size_t>(std::llround(s.duration / dt));
                in.ripples = s.ripples;
            } else if constexpr (std::is_same_v<T, ScriptedScenario>) {
                in.steps = s.accel.size();
                in.script = &s;
                in.ripples = s.spec.ripples;
            } else {
                validate_trace(s.trace);
                if (s.trace.empty()) throw std::invalid_argument("paddle scenario: empty trace");
                const double duration = s.duration > 0.0 ? s.duration : s.trace.back().t;
                in.steps = static_cast<std::size_t>(std::llround(duration / dt));
                in.paddle = &s;
            }
        },
        scenario);
    return in;
}

Vec3 to_world(const RigidBodyState& board, const Vec3& local) {
    return board.position + body_to_world(board, local);
}

}  // namespace

SimulationLog run_scenario(const SimConfig& config, const Scenario& scenario, const RunOptions& options) {
    validate(config);
    const double dt = config.timestep;
    const StepInput input = describe(scenario, dt);

    OceanConfig ocean;
    if (options.ocean) {
        ocean = *options.ocean;
    } else if (input.ripples) {
        OceanSettings settings = config.ocean;
        settings.preset = *input.ripples ? OceanPreset::ripples : OceanPreset::flat;
        if (settings.preset != config.ocean.preset) settings.components = 0;
        ocean = make_ocean(settings);
    } else {
        ocean = make_ocean(config.ocean);
    }
    validate(ocean);

    RigidBodyState state = options.initial_state.value_or(initial_board_state(config));
    validate(state);

    CueingPipeline cueing(config.cueing, dt);
    PlatformState platform;
    platform.tau = config.platform_tau;

    SimulationLog log;
    log.dt = dt;
    log.rows.reserve(input.steps + 1);

    const auto record = [&](double t, unsigned sources) {
        const CueingOutput out = cueing.step(t, state);
        platform = actuate(platform, out.commanded, config.cueing.envelope, dt);
        log.rows.push_back({t, state, out.raw, out.filtered, out.requested, out.commanded, platform.achieved, sources});
    };
    record(0.0, 0U);

    for (std::size_t k = 0; k < input.steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        unsigned sources = 0;

        Wrench total = buoyancy_wrench(config.board, state, ocean, t);
        if (total.force.squared_norm() > 0.0) sources |= kSourceBuoyancy;
        const Wrench drag = drag_wrench(config.board, state, ocean, t);
        if (drag.force.squared_norm() > 0.0 || drag.torque.squared_norm() > 0.0) sources |= kSourceDrag;
        total += drag;
        total.force.y -= state.mass * config.board.gravity;

        if (input.paddle != nullptr) {
            const auto& trace = input.paddle->trace;
            const HandSample prev_local = sample_trace(trace, t - dt);
            const HandSample cur_local = sample_trace(trace, t);
            // Both samples use the current pose: hand motion relative to the board.
            const HandSample prev{t - dt, to_world(state, prev_local.left), to_world(state, prev_local.right)};
            const HandSample cur{t, to_world(state, cur_local.left), to_world(state, cur_local.right)};
            const PaddleWrench pw = paddle_wrench(prev, cur, ocean, state, config.paddle);
            if (pw.force.squared_norm() > 0.0) sources |= kSourcePaddle;
            total.force += pw.force;
            total.torque += pw.torque;
        }

        if (input.script != nullptr) {
            const Vec3 f = body_axes(state).forward;
            const Vec3 heading = Vec3{f.x, 0.0, f.z}.normalized();
            total.force += heading * (state.mass * input.script->accel[k] - total.force.dot(heading));
            sources |= kSourceScript;
        }

        try {
            state = integrate_step(state, total.force, total.torque, dt);
        } catch (const IntegrationError& e) {
            throw SimulationError("simulation aborted at t=" + std::to_string(t) + " s: " + e.what());
        }
        record(static_cast<double>(k + 1) * dt, sources);
    }
    return log;
}

SimulationLog run_trial(const SimConfig& config, const TrialSpec& spec) {
    return run_scenario(config, generate_trial(spec, config.timestep));
}

namespace {

double rms(const std::vector<LogRow>& rows, Dof d) {
    if (rows.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : rows) s += r.commanded[d] * r.commanded[d];
    return std::sqrt(s / static_cast<double>(rows.size()));
}

ConditionMetrics condition_metrics(const TrialRun& run, double sustain_start) {
    ConditionMetrics m;
    m.spec = run.spec;
    const double dt = run.log.dt;
    double sum_req = 0.0;
    double sum_cmd = 0.0;
    std::size_t n = 0;
    for (const auto& r : run.log.rows) {
        if (r.t >= sustain_start - 0.5 * dt && r.t < run.spec.accel_duration - 0.5 * dt) {
            sum_req += std::abs(r.requested.surge);
            sum_cmd += std::abs(r.commanded.surge);
            ++n;
        }
    }
    if (n > 0) {
        m.mean_surge_requested = sum_req / static_cast<double>(n);
        m.mean_surge_commanded = sum_cmd / static_cast<double>(n);
    }
    m.onset_lag = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : run.log.rows) {
        if (m.mean_surge_commanded > 0.0 && r.commanded.surge >= 0.9 * m.mean_surge_commanded) {
            m.onset_lag = r.t;
            break;
        }
    }
    for (Dof d : kAllDofs) m.rms_commanded[static_cast<std::size_t>(d)] = rms(run.log.rows, d);
    return m;
}

}  // namespace

TrialReport trial_metrics(const std::vector<TrialRun>& runs, double sustain_start) {
    if (runs.empty()) {
        throw std::invalid_argument("trial_metrics: no trial logs");
    }
    TrialReport rep;
    // Index: [ripples][level]; averaged when a condition has several logs.
    std::array<std::array<std::vector<const ConditionMetrics*>, 3>, 2> grid;
    for (const auto& run : runs) {
        rep.conditions.push_back(condition_metrics(run, sustain_start));
    }
    for (const auto& c : rep.conditions) {
        if (const auto lvl = classify_level(c.spec.level)) {
            grid[c.spec.ripples ? 1 : 0][static_cast<std::size_t>(*lvl)].push_back(&c);
        }
    }
    const auto mean_surge = [&](int rip, AccelLevel l) -> std::optional<double> {
        const auto& cell = grid[static_cast<std::size_t>(rip)][static_cast<std::size_t>(l)];
        if (cell.empty()) return std::nullopt;
        double s = 0.0;
        for (const auto* c : cell) s += c->mean_surge_requested;
        return s / static_cast<double>(cell.size());
    };
    const auto mean_rms = [&](int rip, AccelLevel l) -> std::optional<std::array<double, kDofCount>> {
        const auto& cell = grid[static_cast<std::size_t>(rip)][static_cast<std::size_t>(l)];
        if (cell.empty()) return std::nullopt;
        std::array<double, kDofCount> s{};
        for (const auto* c : cell) {
            for (std::size_t i = 0; i < kDofCount; ++i) s[i] += c->rms_commanded[i] / static_cast<double>(cell.size());
        }
        return s;
    };

    for (int rip = 0; rip < 2; ++rip) {
        for (AccelLevel l : kAllLevels) {
            if (!mean_surge(rip, l)) {
                rep.missing.push_back(std::string(to_string(l)) + (rip ? " ripples=on" : " ripples=off"));
            }
        }
        const auto la = mean_surge(rip, AccelLevel::LA);
        const auto ma = mean_surge(rip, AccelLevel::MA);
        const auto ha = mean_surge(rip, AccelLevel::HA);
        if (la && *la > 0.0 && ma) rep.ratio_ma_la[static_cast<std::size_t>(rip)] = *ma / *la;
        if (la && *la > 0.0 && ha) rep.ratio_ha_la[static_cast<std::size_t>(rip)] = *ha / *la;
    }
    for (AccelLevel l : kAllLevels) {
        const auto off = mean_rms(0, l);
        const auto on = mean_rms(1, l);
        if (off && on) {
            std::array<double, kDofCount> d{};
            for (std::size_t i = 0; i < kDofCount; ++i) d[i] = (*on)[i] - (*off)[i];
            rep.ripple_rms_delta[static_cast<std::size_t>(l)] = d;
        }
    }
    return rep;
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json dof_json(const std::array<double, kDofCount>& values) {
    nlohmann::json j = nlohmann::json::object();
    for (Dof d : kAllDofs) j[std::string(to_string(d))] = values[static_cast<std::size_t>(d)];
    return j;
}

}  // namespace

nlohmann::json to_json(const TrialReport& report) {
    using nlohmann::json;
    json conditions = json::array();
    for (const auto& c : report.conditions) {
        const auto lvl = classify_level(c.spec.level);
        conditions.push_back({
            {"level", lvl ? std::string(to_string(*lvl)) : "custom"},
            {"level_value", c.spec.level},
            {"ripples", c.spec.ripples},
            {"posture", std::string(to_string(c.spec.posture))},
            {"mean_surge_requested", c.mean_surge_requested},
            {"mean_surge_commanded", c.mean_surge_commanded},
            {"onset_lag", std::isnan(c.onset_lag) ? json(nullptr) : json(c.onset_lag)},
            {"rms_commanded", dof_json(c.rms_commanded)},
        });
    }
    json deltas = json::object();
    for (AccelLevel l : kAllLevels) {
        const auto& d = report.ripple_rms_delta[static_cast<std::size_t>(l)];
        deltas[std::string(to_string(l))] = d ? dof_json(*d) : json(nullptr);
    }
    return {
        {"format", "surfsim-trial-report"},
        {"version", 1},
        {"conditions", conditions},
        {"ratio_ma_la", {{"ripples_off", optional_json(report.ratio_ma_la[0])}, {"ripples_on", optional_json(report.ratio_ma_la[1])}}},
        {"ratio_ha_la", {{"ripples_off", optional_json(report.ratio_ha_la[0])}, {"ripples_on", optional_json(report.ratio_ha_la[1])}}},
        {"ripple_rms_delta", deltas},
        {"missing", report.missing},
    };
}

GraecoLatinSquare graeco_latin_square(std::uint64_t seed) {
    SeededRng rng(seed);
    std::array<int, 3> rows{0, 1, 2};
    // Fisher-Yates with the portable generator.
    for (int i = 2; i > 0; --i) {
        std::swap(rows[static_cast<std::size_t>(i)], rows[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    }
    GraecoLatinSquare sq;
    for (std::size_t r = 0; r < 3; ++r) {
        const int base = rows[r];
        for (int c = 0; c < 3; ++c) {
            sq.levels[r][static_cast<std::size_t>(c)] = (base + c) % 3;
            sq.greek[r][static_cast<std::size_t>(c)] = (2 * base + c) % 3;
        }
    }
    return sq;
}

std::vector<SessionTrial> graeco_latin_order(std::uint64_t seed) {
    const GraecoLatinSquare sq = graeco_latin_square(seed);
    // Independent stream for posture assignment and the leading ripple state.
    SeededRng rng(seed ^ 0x5DEECE66DULL);
    std::array<Posture, 3> postures = kAllPostures;
    for (int i = 2; i > 0; --i) {
        std::swap(postures[static_cast<std::size_t>(i)], postures[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    }
    const bool ripples_first = rng.below(2) == 1;

    std::vector<SessionTrial> order;
    order.reserve(18);
    for (std::size_t r = 0; r < 3; ++r) {
        const bool first_half_ripples = (r % 2 == 0) ? ripples_first : !ripples_first;
        for (int half = 0; half < 2; ++half) {
            const auto& row = half == 0 ? sq.levels[r] : sq.greek[r];
            for (int lv : row) {
                order.push_back({static_cast<int>(r), postures[r], kAllLevels[static_cast<std::size_t>(lv)],
                                 half == 0 ? first_half_ripples : !first_half_ripples});
            }
        }
    }
    return order;
}

nlohmann::json to_json(const std::vector<SessionTrial>& order, std::uint64_t seed) {
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& t : order) {
        trials.push_back({{"block", t.block},
                          {"posture", std::string(to_string(t.posture))},
                          {"level", std::string(to_string(t.level))},
                          {"level_value", level_value(t.level)},
                          {"ripples", t.ripples}});
    }
    return {{"format", "surfsim-trial-order"}, {"version", 1}, {"seed", seed}, {"trials", trials}};
}

}  // namespace surfsim
