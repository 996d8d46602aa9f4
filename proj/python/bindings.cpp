#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "surfsim/config.hpp"
#include "surfsim/csv.hpp"
#include "surfsim/errors.hpp"
#include "surfsim/frame_io.hpp"
#include "surfsim/scenario.hpp"
#include "surfsim/washout.hpp"

namespace py = pybind11;
using namespace surfsim;

namespace {

py::object to_py(const nlohmann::json& doc) {
    return py::module_::import("json").attr("loads")(doc.dump());
}

nlohmann::json from_py(const py::object& obj) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Vec3 vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> arr(const Vec3& v) { return {v.x, v.y, v.z}; }

StrokeHands parse_hands(const std::string& s) {
    if (s == "alternating") return StrokeHands::alternating;
    if (s == "together") return StrokeHands::together;
    if (s == "left") return StrokeHands::left_only;
    if (s == "right") return StrokeHands::right_only;
    throw std::invalid_argument("hands must be alternating, together, left or right");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Surfboard dynamics and 6-DoF motion cueing";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);
    py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
    py::register_exception<GimbalError>(m, "GimbalError", PyExc_RuntimeError);

    py::class_<PlatformFrame>(m, "PlatformFrame")
        .def(py::init<>())
        .def(py::init([](double t, double surge, double sway, double heave, double pitch, double roll,
                         double yaw) { return PlatformFrame{t, surge, sway, heave, pitch, roll, yaw}; }),
             py::arg("t"), py::arg("surge") = 0.0, py::arg("sway") = 0.0, py::arg("heave") = 0.0,
             py::arg("pitch") = 0.0, py::arg("roll") = 0.0, py::arg("yaw") = 0.0)
        .def_readwrite("t", &PlatformFrame::t)
        .def_readwrite("surge", &PlatformFrame::surge)
        .def_readwrite("sway", &PlatformFrame::sway)
        .def_readwrite("heave", &PlatformFrame::heave)
        .def_readwrite("pitch", &PlatformFrame::pitch)
        .def_readwrite("roll", &PlatformFrame::roll)
        .def_readwrite("yaw", &PlatformFrame::yaw)
        .def("__eq__", [](const PlatformFrame& a, const PlatformFrame& b) { return a == b; })
        .def("__repr__", [](const PlatformFrame& f) {
            return "PlatformFrame(t=" + format_double(f.t) + ", surge=" + format_double(f.surge) +
                   ", sway=" + format_double(f.sway) + ", heave=" + format_double(f.heave) +
                   ", pitch=" + format_double(f.pitch) + ", roll=" + format_double(f.roll) +
                   ", yaw=" + format_double(f.yaw) + ")";
        });

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_static("from_dict", [](const py::object& d) { return config_from_json(from_py(d)); })
        .def_static("load", [](const std::filesystem::path& p) { return load_config(p); })
        .def("to_dict", [](const SimConfig& c) { return to_py(config_to_json(c)); })
        .def("save", [](const SimConfig& c, const std::filesystem::path& p) { save_config(c, p); })
        .def_readwrite("timestep", &SimConfig::timestep)
        .def_readwrite("mass", &SimConfig::mass)
        .def("__eq__", [](const SimConfig& a, const SimConfig& b) { return a == b; });

    py::class_<SimulationLog>(m, "SimulationLog")
        .def_readonly("dt", &SimulationLog::dt)
        .def("__len__", [](const SimulationLog& l) { return l.rows.size(); })
        .def("times", [](const SimulationLog& l) {
            std::vector<double> t;
            for (const auto& r : l.rows) t.push_back(r.t);
            return t;
        })
        .def("positions", [](const SimulationLog& l) {
            std::vector<std::array<double, 3>> p;
            for (const auto& r : l.rows) p.push_back(arr(r.state.position));
            return p;
        })
        .def("velocities", [](const SimulationLog& l) {
            std::vector<std::array<double, 3>> v;
            for (const auto& r : l.rows) v.push_back(arr(r.state.linear_velocity));
            return v;
        })
        .def("headings", [](const SimulationLog& l) {
            std::vector<double> h;
            for (const auto& r : l.rows) h.push_back(heading_angle(r.state.orientation));
            return h;
        })
        .def("requested_frames", [](const SimulationLog& l) {
            std::vector<PlatformFrame> f;
            for (const auto& r : l.rows) f.push_back(r.requested);
            return f;
        })
        .def("commanded_frames", &SimulationLog::commanded_frames)
        .def("achieved_frames", &SimulationLog::achieved_frames)
        .def("write_csv", [](const SimulationLog& l, const std::filesystem::path& p) { write_log_csv(l, p); });

    m.def("read_log_csv", [](const std::filesystem::path& p) { return read_log_csv(p); }, py::arg("path"));

    m.def(
        "simulate_passive",
        [](const SimConfig& c, double duration, std::optional<bool> ripples) {
            py::gil_scoped_release release;
            return run_scenario(c, PassiveScenario{duration, ripples});
        },
        py::arg("config"), py::arg("duration"), py::arg("ripples") = py::none());

    m.def(
        "simulate_paddling",
        [](const SimConfig& c, double duration, const std::string& hands) {
            StrokePattern pattern;
            pattern.hands = parse_hands(hands);
            pattern.duration = duration;
            pattern.hand_offset_x = c.paddle.hand_offset_x;
            PaddleScenario s{generate_strokes(pattern), duration};
            py::gil_scoped_release release;
            return run_scenario(c, s);
        },
        py::arg("config"), py::arg("duration"), py::arg("hands") = "alternating");

    m.def(
        "run_trial",
        [](const SimConfig& c, const std::string& level, bool ripples, const std::string& posture) {
            const TrialSpec spec = make_trial(parse_level(level), ripples, parse_posture(posture));
            py::gil_scoped_release release;
            return run_trial(c, spec);
        },
        py::arg("config"), py::arg("level"), py::arg("ripples") = false, py::arg("posture") = "sitting");

    m.def(
        "trial_metrics",
        [](const std::vector<std::tuple<std::string, bool, SimulationLog>>& runs) {
            std::vector<TrialRun> rs;
            for (const auto& [level, ripples, log] : runs) {
                rs.push_back({make_trial(parse_level(level), ripples), log});
            }
            return to_py(to_json(trial_metrics(rs)));
        },
        py::arg("runs"), "runs: list of (level, ripples, log)");

    m.def(
        "compare_cueing",
        [](const SimulationLog& log, const SimConfig& c, double steady_start, double steady_end) {
            const CueingReport r = compare_cueing(log.kinematics(), c.cueing, c.washout, log.dt,
                                                  CompareWindow{steady_start, steady_end, 2.0});
            py::dict d;
            d["onset_lag"] = r.onset_lag;
            d["steady_ratio"] = r.steady_ratio ? py::cast(*r.steady_ratio) : py::none();
            d["envelope_violations"] = r.envelope_violations;
            d["washout_end_fraction"] = r.candidate_end_fraction;
            d["washout_peak"] = r.candidate_peak;
            return d;
        },
        py::arg("log"), py::arg("config") = SimConfig{}, py::arg("steady_start") = 1.0,
        py::arg("steady_end") = 5.0);

    m.def(
        "session_order",
        [](std::uint64_t seed) { return to_py(to_json(graeco_latin_order(seed), seed)); }, py::arg("seed"));

    m.def("ema_step",
          [](double lambda, const std::array<double, 3>& prev, const std::array<double, 3>& sample) {
              validate_lambda(lambda);
              return arr(ema_step(lambda, vec(prev), vec(sample)));
          });

    m.def(
        "compose_frame",
        [](const PlatformFrame& request, const PlatformFrame& previous, double dt, bool clamp) {
            return compose_frame(request, default_envelope(), previous, dt, clamp);
        },
        py::arg("request"), py::arg("previous"), py::arg("dt") = kDefaultTimestep, py::arg("clamp") = true);

    m.def(
        "wave_height",
        [](const std::string& preset, std::uint64_t seed, double x, double z, double t) {
            const OceanPreset p = parse_ocean_preset(preset);
            return height_at(spectrum_sample(seed, p, default_component_count(p)), x, z, t);
        },
        py::arg("preset"), py::arg("seed"), py::arg("x"), py::arg("z"), py::arg("t"));

    m.def("encode_frame", [](const PlatformFrame& f) {
        const FrameRecord r = encode_frame(f);
        return py::bytes(reinterpret_cast<const char*>(r.data()), r.size());
    });
    m.def("decode_frame", [](const py::bytes& b) {
        const std::string s = b;
        return decode_frame(std::as_bytes(std::span(s.data(), s.size())));
    });
    m.def("read_frame_file", [](const std::filesystem::path& p) { return read_frame_file(p); });

    m.attr("FRAME_RECORD_SIZE") = kFrameRecordSize;
}
