// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "surfsim/csv.hpp"
#include "surfsim/frame_io.hpp"
#include "surfsim/rng.hpp"
#include "surfsim/scenario.hpp"
#include "surfsim/washout.hpp"

using namespace surfsim;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rms(const std::vector<LogRow>& rows, Dof d) {
    double s = 0.0;
    for (const auto& r : rows) s += r.commanded[d] * r.commanded[d];
    return std::sqrt(s / static_cast<double>(rows.size()));
}

Vec3 random_unit(SeededRng& rng) {
    for (;;) {
        const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double n = v.norm();
        if (n > 0.1 && n <= 1.0) return v / n;
    }
}

Outcome level_ratios() {
    const auto t0 = std::chrono::steady_clock::now();
    SimConfig cfg;
    cfg.cueing.clamp = false;
    std::vector<TrialRun> runs;
    for (AccelLevel l : kAllLevels) {
        const TrialSpec spec = make_trial(l, false);
        runs.push_back({spec, run_trial(cfg, spec)});
    }
    const TrialReport rep = trial_metrics(runs);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!rep.ratio_ma_la[0] || !rep.ratio_ha_la[0]) return {false, "ratios unavailable"};
    const double ma = *rep.ratio_ma_la[0];
    const double ha = *rep.ratio_ha_la[0];
    const bool ok = std::abs(ma - 3.0) <= 0.03 && std::abs(ha - 6.0) <= 0.06 && secs < 10.0;
    return {ok, fmt("MA/LA=%.6f HA/LA=%.6f runtime=%.2fs", ma, ha, secs)};
}

Outcome trial_kinematics() {
    const SimConfig cfg;
    const SimulationLog log = run_trial(cfg, make_trial(AccelLevel::HA, false));
    const auto at = static_cast<std::size_t>(std::lround(5.0 / log.dt));
    const double v5 = log.rows.at(at).state.linear_velocity.norm();
    const double residual = log.rows.back().state.linear_velocity.norm();
    const bool ok = std::abs(v5 - 15.0) <= 0.15 && residual < 0.01;
    return {ok, fmt("speed(5s)=%.6f m/s residual=%.2e m/s", v5, residual)};
}

Outcome buoyancy() {
    const SimConfig cfg;
    RigidBodyState s0 = initial_board_state(cfg);
    s0.position.y += 0.08;
    s0.orientation = Quat::from_axis_angle(kUnitZ, 3 * kDeg);
    RunOptions opts;
    opts.initial_state = s0;
    const SimulationLog log = run_scenario(cfg, PassiveScenario{30.0, false}, opts);
    const RigidBodyState& s = log.rows.back().state;
    const OceanConfig flat;
    const double t = log.rows.back().t;
    const double fraction = submerged_volume(cfg.board, s, flat, t) / cfg.board.total_volume;
    const double target = cfg.mass / (cfg.board.water_density * cfg.board.total_volume);
    Wrench w = buoyancy_wrench(cfg.board, s, flat, t);
    w += drag_wrench(cfg.board, s, flat, t);
    w.force.y -= cfg.mass * cfg.board.gravity;
    const double net = w.force.norm();
    const bool ok = std::abs(fraction - target) <= 1e-3 && net < 1e-3;
    return {ok, fmt("fraction=%.6f target=%.6f |net force|=%.2e N", fraction, target, net)};
}

Outcome pitch_roll_exactness() {
    SeededRng rng(404);
    double worst = 0.0;
    double worst_yaw = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double angle = rng.uniform(-60.0, 60.0) * kDeg;
        const bool is_pitch = (i % 2) == 0;
        // Nose-up pitch is a rotation about -x; right-up roll about +z.
        const Quat q = is_pitch ? Quat::from_axis_angle(kUnitX, -angle) : Quat::from_axis_angle(kUnitZ, angle);
        const PitchRoll pr = map_pitch_roll(body_axes(q));
        const double want_pitch = is_pitch ? angle : 0.0;
        const double want_roll = is_pitch ? 0.0 : angle;
        worst = std::max({worst, std::abs(pr.pitch - want_pitch), std::abs(pr.roll - want_roll)});

        const Quat yawed = Quat::from_axis_angle(kUnitY, rng.uniform(-std::numbers::pi, std::numbers::pi)) * q;
        const PitchRoll py = map_pitch_roll(body_axes(yawed));
        worst_yaw = std::max({worst_yaw, std::abs(py.pitch - pr.pitch), std::abs(py.roll - pr.roll)});
    }
    return {worst < 1e-9 && worst_yaw < 1e-9, fmt("max error=%.2e rad, yaw-composed change=%.2e rad", worst, worst_yaw)};
}

Outcome ema_closed_form() {
    double worst = 0.0;
    for (double lambda : {0.01, 0.2, 0.5, 0.9}) {
        for (double c : {-3.0, 0.7, 12.5}) {
            FilterState f{lambda, {}};
            const Vec3 cv{c, c, c};
            for (int n = 1; n <= 1000; ++n) {
                const BoardKinematics out = filter_step(f, {cv, cv, cv});
                const double expect = c * (1.0 - std::pow(1.0 - lambda, n));
                worst = std::max({worst, std::abs(out.lin_accel.x - expect), std::abs(out.ang_accel.y - expect),
                                  std::abs(out.lin_vel.z - expect)});
            }
        }
    }
    SeededRng rng(5);
    bool identity = true;
    Vec3 prev;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 x{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
        identity = identity && ema_step(1.0, prev, x) == x;
        prev = x;
    }
    return {worst <= 1e-12 && identity, fmt("max |error|=%.2e, lambda=1 identity=%s", worst, identity ? "yes" : "no")};
}

Outcome envelope_safety() {
    SeededRng rng(606);
    const double dt = 0.01;
    std::size_t violations = 0;
    std::size_t frames = 0;
    for (int stream = 0; stream < 10'000; ++stream) {
        CueingParams p;
        p.lambda = rng.uniform(0.01, 1.0);
        p.scaling.sf1 = rng.uniform(0.001, 1.0);
        p.scaling.sf2 = rng.uniform(0.001, 1.0);
        p.scaling.sf3 = rng.uniform(0.001, 1.0);
        p.scaling.k_heave = rng.uniform(0.1, 5.0);
        CueingPipeline pipe(p, dt);
        std::vector<PlatformFrame> out;
        const double scale = std::pow(10.0, rng.uniform(-1.0, 4.0));
        for (int k = 0; k < 60; ++k) {
            KinematicSample s;
            s.t = k * dt;
            const bool spike = rng.unit() < 0.1;
            const double m = spike ? scale * 100.0 : scale;
            s.kin.lin_accel = random_unit(rng) * (m * rng.unit());
            s.kin.ang_accel = random_unit(rng) * (m * rng.unit());
            s.kin.lin_vel = random_unit(rng) * (m * rng.unit());
            // Includes upside-down and near-vertical attitudes.
            Quat q = Quat::from_axis_angle(random_unit(rng), rng.uniform(-std::numbers::pi, std::numbers::pi));
            if (rng.unit() < 0.05) q = Quat::from_axis_angle(kUnitX, (rng.unit() < 0.5 ? -1 : 1) * std::numbers::pi / 2);
            s.axes = body_axes(q);
            out.push_back(pipe.step(s).commanded);
        }
        violations += envelope_violations(out, p.envelope, dt);
        frames += out.size();
    }
    return {violations == 0, fmt("%zu streams, %zu frames, %zu violations", std::size_t{10'000}, frames, violations)};
}

Outcome steering() {
    const SimConfig cfg;
    auto heading_change = [&](StrokeHands hands) {
        StrokePattern p;
        p.hands = hands;
        p.duration = 1.0 / p.cadence_hz;  // one stroke cycle
        const SimulationLog log = run_scenario(cfg, PaddleScenario{generate_strokes(p), 2.0});
        return heading_angle(log.rows.back().state.orientation) / kDeg;
    };
    const double right = heading_change(StrokeHands::right_only);
    const double left = heading_change(StrokeHands::left_only);
    const double both = heading_change(StrokeHands::together);
    const bool ok = right < 0.0 && left > 0.0 && std::abs(both) < 0.1;
    return {ok, fmt("right-only=%+.3f deg left-only=%+.3f deg both=%+.2e deg", right, left, both)};
}

Outcome ripple_effect() {
    const SimConfig cfg;
    const SimulationLog off = run_scenario(cfg, PassiveScenario{30.0, false});
    const SimulationLog on = run_scenario(cfg, PassiveScenario{30.0, true});
    bool ok = true;
    std::string detail;
    for (Dof d : {Dof::heave, Dof::pitch, Dof::roll}) {
        const double a = rms(off.rows, d);
        const double b = rms(on.rows, d);
        ok = ok && b > a;
        detail += fmt("%s %.2e->%.2e ", std::string(to_string(d)).c_str(), a, b);
    }
    return {ok, detail};
}

Outcome washout_comparison() {
    const SimConfig cfg;
    const double dt = cfg.timestep;
    const auto log = pulse_kinematics(0.5, 5.0, 8.0, dt);
    const CueingReport rep = compare_cueing(log, cfg.cueing, cfg.washout, dt, CompareWindow{1.0, 5.0, 2.0});
    if (!rep.steady_ratio) return {false, "washout steady mean is zero"};
    const bool ok = *rep.steady_ratio > 2.0 && rep.candidate_end_fraction < 0.10;
    return {ok, fmt("EMA/washout steady ratio=%.2f washout at pulse end=%.1f%% of peak, onset lag=%.2fs",
                    *rep.steady_ratio, 100.0 * rep.candidate_end_fraction, rep.onset_lag[0])};
}

Outcome determinism_and_formats() {
    SimConfig cfg;
    cfg.ocean.preset = OceanPreset::ripples;
    cfg.ocean.seed = 1234;
    StrokePattern p;
    p.duration = 5.0;
    const Scenario sc = PaddleScenario{generate_strokes(p), 5.0};
    std::ostringstream a;
    std::ostringstream b;
    write_log_csv(run_scenario(cfg, sc), a);
    write_log_csv(run_scenario(cfg, sc), b);
    const bool logs_equal = a.str() == b.str();

    SeededRng rng(77);
    bool frames_exact = true;
    for (int i = 0; i < 10'000; ++i) {
        const PlatformFrame f{rng.uniform(0, 1e4), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1),
                              rng.uniform(-0.1, 0.1), rng.uniform(-0.26, 0.26), rng.uniform(-0.26, 0.26),
                              rng.uniform(-0.35, 0.35)};
        const PlatformFrame g = decode_frame(encode_frame(f));
        frames_exact = frames_exact && std::memcmp(&f, &g, sizeof f) == 0;
    }

    bool order_same = true;
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xDEADBEEFULL}) {
        const auto first = graeco_latin_order(seed);
        order_same = order_same && first.size() == 18 && first == graeco_latin_order(seed);
    }
    return {logs_equal && frames_exact && order_same,
            fmt("csv identical=%s frame round-trip exact=%s order regenerates=%s", logs_equal ? "yes" : "no",
                frames_exact ? "yes" : "no", order_same ? "yes" : "no")};
}

Outcome paddling_anchor() {
    const SimConfig cfg;
    StrokePattern p;
    p.duration = 10.0;
    const SimulationLog log = run_scenario(cfg, PaddleScenario{generate_strokes(p), 10.0});
    // Mean acceleration over the first full stroke cycle.
    const double cycle = 1.0 / p.cadence_hz;
    const auto k = static_cast<std::size_t>(std::lround(cycle / log.dt));
    const double accel = log.rows.at(k).state.linear_velocity.z / cycle;
    return {std::abs(accel - 0.5) <= 0.15, fmt("initial acceleration=%.3f m/s^2", accel)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 level-ratio fidelity", level_ratios},
        {"AC2 trial kinematics", trial_kinematics},
        {"AC3 buoyancy equilibrium", buoyancy},
        {"AC4 pitch/roll exactness", pitch_roll_exactness},
        {"AC5 EMA closed form", ema_closed_form},
        {"AC6 envelope safety", envelope_safety},
        {"AC7 steering signs", steering},
        {"AC8 ripple effect", ripple_effect},
        {"AC9 washout comparison", washout_comparison},
        {"AC10 determinism and formats", determinism_and_formats},
        {"AC11 paddling acceleration", paddling_anchor},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
