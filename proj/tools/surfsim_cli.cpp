// surfsim command-line tool.
//
//   surfsim simulate      config + scenario/trace -> CSV log
//   surfsim trial         scripted acceleration trials -> logs + metrics JSON
//   surfsim bench-cueing  CSV log -> EMA vs washout report JSON
//   surfsim order         seed -> 18-trial session order JSON
//   surfsim emit-frames   CSV log -> frame file or udp://host:port

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "surfsim/config.hpp"
#include "surfsim/csv.hpp"
#include "surfsim/frame_io.hpp"
#include "surfsim/scenario.hpp"
#include "surfsim/washout.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace surfsim;

namespace {

SimConfig resolve_config(const std::string& path) {
    if (!path.empty()) return load_config(path);
    if (const char* env = std::getenv("SURFSIM_CONFIG"); env != nullptr && *env != '\0') {
        return load_config(env);
    }
    return {};
}

void emit_json(const json& doc, const std::string& path) {
    if (path.empty()) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

std::optional<bool> parse_ripples(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "on") return true;
    if (s == "off") return false;
    throw std::invalid_argument("--ripples must be on or off");
}

StrokeHands parse_hands(const std::string& s) {
    if (s == "alternating") return StrokeHands::alternating;
    if (s == "together") return StrokeHands::together;
    if (s == "left") return StrokeHands::left_only;
    if (s == "right") return StrokeHands::right_only;
    throw std::invalid_argument("--strokes must be alternating, together, left or right");
}

std::string log_path_or(const SimConfig& cfg, const std::string& flag, const std::string& fallback) {
    if (!flag.empty()) return flag;
    if (!cfg.output.log.empty()) return cfg.output.log;
    return fallback;
}

json cueing_report_json(const CueingReport& r) {
    json lag = json::object();
    for (std::size_t i = 0; i < kTranslationalDofs.size(); ++i) {
        lag[std::string(to_string(kTranslationalDofs[i]))] = r.onset_lag[i];
    }
    return {
        {"format", "surfsim-cueing-report"},
        {"version", 1},
        {"onset_lag", lag},
        {"steady_ratio", r.steady_ratio ? json(*r.steady_ratio) : json(nullptr)},
        {"envelope_violations", r.envelope_violations},
        {"ema_steady_mean", r.reference_steady_mean},
        {"washout_steady_mean", r.candidate_steady_mean},
        {"washout_peak", r.candidate_peak},
        {"washout_end_fraction", r.candidate_end_fraction},
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surfboard dynamics and 6-DoF motion-cueing simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON config (falls back to $SURFSIM_CONFIG)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a passive or paddling scenario and write a CSV log");
    std::string sim_scenario = "passive";
    std::string sim_trace;
    std::string sim_strokes = "alternating";
    double sim_duration = 30.0;
    std::string sim_ripples;
    std::string sim_out;
    sim->add_option("--scenario", sim_scenario, "passive or paddle")->check(CLI::IsMember({"passive", "paddle"}));
    sim->add_option("--trace", sim_trace, "hand-trace CSV (paddle scenario); synthetic strokes when absent");
    sim->add_option("--strokes", sim_strokes, "synthetic strokes: alternating, together, left, right");
    sim->add_option("--duration", sim_duration, "simulated seconds")->check(CLI::PositiveNumber);
    sim->add_option("--ripples", sim_ripples, "on/off, overrides the config's ocean preset");
    sim->add_option("-o,--out", sim_out, "log path (default: config output.log or surfsim_log.csv)");

    // trial
    auto* trial = app.add_subcommand("trial", "Run scripted acceleration trials and report metrics");
    std::vector<std::string> trial_levels;
    std::string trial_ripples = "both";
    std::string trial_posture = "sitting";
    bool trial_no_clamp = false;
    std::string trial_dir;
    std::string trial_report;
    trial->add_option("--level", trial_levels, "LA, MA or HA (repeatable; default all)");
    trial->add_option("--ripples", trial_ripples, "on, off or both")->check(CLI::IsMember({"on", "off", "both"}));
    trial->add_option("--posture", trial_posture, "sitting, kneeling or standing (metadata)");
    trial->add_flag("--no-clamp", trial_no_clamp, "disable envelope clamping and rate limiting");
    trial->add_option("--out-dir", trial_dir, "write one CSV log per trial here");
    trial->add_option("--report", trial_report, "metrics JSON path (default stdout)");

    // bench-cueing
    auto* bench = app.add_subcommand("bench-cueing", "Compare the EMA pipeline with the washout baseline on a log");
    std::string bench_log;
    CompareWindow window;
    std::string bench_report;
    bench->add_option("--log", bench_log, "CSV log from simulate or trial")->required();
    bench->add_option("--steady-start", window.steady_start, "start of the sustained window, s");
    bench->add_option("--steady-end", window.steady_end, "end of the sustained window, s");
    bench->add_option("--report", bench_report, "report JSON path (default stdout)");

    // order
    auto* order = app.add_subcommand("order", "Print the 18-trial session order for a seed");
    std::uint64_t order_seed = 0;
    order->add_option("--seed", order_seed, "session seed")->required();

    // emit-frames
    auto* emit = app.add_subcommand("emit-frames", "Stream commanded frames from a log to a sink");
    std::string emit_log;
    std::string emit_sink;
    double emit_rate = 100.0;
    std::size_t emit_capacity = 64;
    bool emit_achieved = false;
    emit->add_option("--log", emit_log, "CSV log")->required();
    emit->add_option("--sink", emit_sink, "frame file path or udp://host:port (default: config output.frames)");
    emit->add_option("--rate", emit_rate, "frames per second")->check(CLI::PositiveNumber);
    emit->add_option("--capacity", emit_capacity, "queue capacity")->check(CLI::PositiveNumber);
    emit->add_flag("--achieved", emit_achieved, "stream achieved instead of commanded poses");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            const SimConfig cfg = resolve_config(config_path);
            Scenario scenario;
            if (sim_scenario == "passive") {
                scenario = PassiveScenario{sim_duration, parse_ripples(sim_ripples)};
            } else {
                PaddleScenario p;
                if (!sim_trace.empty()) {
                    p.trace = read_hand_trace(fs::path(sim_trace));
                } else {
                    StrokePattern pattern;
                    pattern.hands = parse_hands(sim_strokes);
                    pattern.duration = sim_duration;
                    pattern.hand_offset_x = cfg.paddle.hand_offset_x;
                    p.trace = generate_strokes(pattern);
                }
                p.duration = sim_duration;
                scenario = std::move(p);
            }
            RunOptions opts;
            if (sim_scenario == "paddle" && !sim_ripples.empty()) {
                OceanSettings s = cfg.ocean;
                s.preset = *parse_ripples(sim_ripples) ? OceanPreset::ripples : OceanPreset::flat;
                s.components = 0;
                opts.ocean = make_ocean(s);
            }
            const SimulationLog log = run_scenario(cfg, scenario, opts);
            const std::string out = log_path_or(cfg, sim_out, "surfsim_log.csv");
            write_log_csv(log, fs::path(out));
            std::cerr << "wrote " << log.rows.size() << " rows to " << out << '\n';
        } else if (*trial) {
            SimConfig cfg = resolve_config(config_path);
            if (trial_no_clamp) cfg.cueing.clamp = false;
            std::vector<AccelLevel> levels;
            for (const auto& l : trial_levels) levels.push_back(parse_level(l));
            if (levels.empty()) levels.assign(kAllLevels.begin(), kAllLevels.end());
            std::vector<bool> ripple_states;
            if (trial_ripples != "on") ripple_states.push_back(false);
            if (trial_ripples != "off") ripple_states.push_back(true);
            const Posture posture = parse_posture(trial_posture);

            if (!trial_dir.empty()) fs::create_directories(trial_dir);
            std::vector<TrialRun> runs;
            for (bool rip : ripple_states) {
                for (AccelLevel l : levels) {
                    const TrialSpec spec = make_trial(l, rip, posture);
                    runs.push_back({spec, run_trial(cfg, spec)});
                    if (!trial_dir.empty()) {
                        const fs::path p = fs::path(trial_dir) /
                                           (std::string("trial_") + std::string(to_string(l)) +
                                            (rip ? "_ripples" : "_calm") + ".csv");
                        write_log_csv(runs.back().log, p);
                    }
                }
            }
            emit_json(to_json(trial_metrics(runs)), trial_report.empty() ? cfg.output.report : trial_report);
        } else if (*bench) {
            const SimConfig cfg = resolve_config(config_path);
            const SimulationLog log = read_log_csv(fs::path(bench_log));
            const auto kin = log.kinematics();
            const CueingReport rep = compare_cueing(kin, cfg.cueing, cfg.washout, log.dt, window);
            emit_json(cueing_report_json(rep), bench_report);
        } else if (*order) {
            emit_json(to_json(graeco_latin_order(order_seed), order_seed), "");
        } else if (*emit) {
            const SimConfig cfg = resolve_config(config_path);
            const SimulationLog log = read_log_csv(fs::path(emit_log));
            const auto frames = emit_achieved ? log.achieved_frames() : log.commanded_frames();
            const std::string sink = emit_sink.empty() ? cfg.output.frames : emit_sink;
            const StreamStats st = stream_frames(frames, emit_rate, sink, emit_capacity);
            std::cout << json{{"sent", st.sent}, {"dropped", st.dropped}, {"error", st.error}}.dump() << '\n';
            if (!st.ok()) {
                std::cerr << "surfsim: error: " << st.error << '\n';
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "surfsim: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
