#include "surfsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "surfsim/errors.hpp"

namespace surfsim {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be rejected.
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) {
            throw ConfigError(where() + ": expected an object");
        }
    }

    [[nodiscard]] std::string key(const std::string& name) const {
        return path_.empty() ? name : path_ + "." + name;
    }

    const json* find(const std::string& name) {
        seen_.insert(name);
        const auto it = obj_.find(name);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(const std::string& name, double& out) {
        if (const json* v = find(name)) {
            if (!v->is_number()) throw ConfigError(key(name) + ": expected a number");
            out = v->get<double>();
        }
    }

    void boolean(const std::string& name, bool& out) {
        if (const json* v = find(name)) {
            if (!v->is_boolean()) throw ConfigError(key(name) + ": expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string& name, std::string& out) {
        if (const json* v = find(name)) {
            if (!v->is_string()) throw ConfigError(key(name) + ": expected a string");
            out = v->get<std::string>();
        }
    }

    void vec3(const std::string& name, Vec3& out) {
        if (const json* v = find(name)) {
            out = parse_vec3(*v, key(name));
        }
    }

    static Vec3 parse_vec3(const json& v, const std::string& where) {
        if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
            throw ConfigError(where + ": expected [x, y, z]");
        }
        return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }

    Section child(const std::string& name) {
        const json* v = find(name);
        static const json empty = json::object();
        return Section(v ? *v : empty, key(name));
    }

    void reject_unknown() const {
        for (const auto& [k, _] : obj_.items()) {
            if (!seen_.count(k)) {
                throw ConfigError(key(k) + ": unknown key");
            }
        }
    }

private:
    [[nodiscard]] std::string where() const { return path_.empty() ? "config" : path_; }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename Fn>
void check(const std::string& key, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

void validate(const SimConfig& c) {
    if (c.version != kConfigVersion) {
        throw ConfigError("version: unsupported config version " + std::to_string(c.version));
    }
    if (!(c.timestep > 0.0)) throw ConfigError("timestep: must be > 0");
    check("body", [&] {
        RigidBodyState s;
        s.mass = c.mass;
        s.inertia_diag = c.inertia;
        validate(s);
    });
    check("board", [&] { validate(c.board, c.mass); });
    check("paddle", [&] { validate(c.paddle); });
    check("cueing.lambda", [&] { validate_lambda(c.cueing.lambda); });
    check("cueing", [&] { validate(c.cueing.scaling); });
    check("envelope", [&] { validate(c.cueing.envelope); });
    check("washout", [&] { validate(c.washout); });
    for (double tau : c.platform_tau) {
        if (!(tau > 0.0)) throw ConfigError("platform.tau: time constants must be > 0");
    }
    if (c.ocean.components > kMaxWaveComponents) {
        throw ConfigError("ocean.components: must be <= 64");
    }
}

SimConfig config_from_json(const json& doc) {
    SimConfig c;
    Section root(doc, "");

    if (const json* v = root.find("version")) {
        if (!v->is_number_integer()) throw ConfigError("version: expected an integer");
        c.version = v->get<int>();
    }
    root.number("timestep", c.timestep);

    {
        Section body = root.child("body");
        body.number("mass", c.mass);
        body.vec3("inertia", c.inertia);
        body.reject_unknown();
    }
    {
        Section board = root.child("board");
        if (const json* probes = board.find("probes")) {
            if (!probes->is_array()) throw ConfigError("board.probes: expected an array");
            c.board.probes.clear();
            c.board.total_volume = 0.0;
            for (std::size_t i = 0; i < probes->size(); ++i) {
                Section p((*probes)[i], "board.probes[" + std::to_string(i) + "]");
                BuoyancyProbe probe;
                p.vec3("position", probe.position);
                p.number("volume", probe.volume);
                p.reject_unknown();
                c.board.probes.push_back(probe);
                c.board.total_volume += probe.volume;
            }
        }
        board.number("probe_height", c.board.probe_height);
        board.vec3("drag_linear", c.board.drag_linear);
        board.vec3("drag_quadratic", c.board.drag_quadratic);
        board.number("angular_drag", c.board.angular_drag);
        board.number("water_density", c.board.water_density);
        board.number("gravity", c.board.gravity);
        board.reject_unknown();
    }
    {
        Section paddle = root.child("paddle");
        paddle.number("scale", c.paddle.scale);
        paddle.number("hand_offset_x", c.paddle.hand_offset_x);
        paddle.reject_unknown();
    }
    {
        Section cue = root.child("cueing");
        cue.number("lambda", c.cueing.lambda);
        cue.number("sf1", c.cueing.scaling.sf1);
        cue.number("sf2", c.cueing.scaling.sf2);
        cue.number("sf3", c.cueing.scaling.sf3);
        cue.number("k_heave", c.cueing.scaling.k_heave);
        cue.boolean("clamp", c.cueing.clamp);
        cue.reject_unknown();
    }
    {
        Section env = root.child("envelope");
        for (Dof d : kAllDofs) {
            Section lim = env.child(std::string(to_string(d)));
            DofLimits& l = c.cueing.envelope[d];
            lim.number("min", l.min);
            lim.number("max", l.max);
            lim.number("rate", l.max_rate);
            lim.reject_unknown();
        }
        env.reject_unknown();
    }
    {
        Section w = root.child("washout");
        w.number("omega_n", c.washout.omega_n);
        w.number("zeta", c.washout.zeta);
        w.reject_unknown();
    }
    {
        Section p = root.child("platform");
        if (const json* tau = p.find("tau")) {
            if (tau->is_number()) {
                c.platform_tau.fill(tau->get<double>());
            } else if (tau->is_array() && tau->size() == kDofCount) {
                for (std::size_t i = 0; i < kDofCount; ++i) {
                    if (!(*tau)[i].is_number()) throw ConfigError("platform.tau: expected numbers");
                    c.platform_tau[i] = (*tau)[i].get<double>();
                }
            } else {
                throw ConfigError("platform.tau: expected a number or an array of 6 numbers");
            }
        }
        p.reject_unknown();
    }
    {
        Section o = root.child("ocean");
        std::string preset(to_string(c.ocean.preset));
        o.string("preset", preset);
        check("ocean.preset", [&] { c.ocean.preset = parse_ocean_preset(preset); });
        if (const json* seed = o.find("seed")) {
            if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<std::int64_t>() >= 0)) {
                throw ConfigError("ocean.seed: expected a non-negative integer");
            }
            c.ocean.seed = seed->get<std::uint64_t>();
        }
        if (const json* n = o.find("components")) {
            if (!n->is_number_integer() || n->get<std::int64_t>() < 0) {
                throw ConfigError("ocean.components: expected a non-negative integer");
            }
            c.ocean.components = n->get<std::size_t>();
        }
        o.reject_unknown();
    }
    {
        Section out = root.child("output");
        out.string("log", c.output.log);
        out.string("report", c.output.report);
        out.string("frames", c.output.frames);
        out.reject_unknown();
    }
    root.reject_unknown();
    validate(c);
    return c;
}

json config_to_json(const SimConfig& c) {
    json probes = json::array();
    for (const auto& p : c.board.probes) {
        probes.push_back({{"position", vec_json(p.position)}, {"volume", p.volume}});
    }
    json envelope = json::object();
    for (Dof d : kAllDofs) {
        const auto& l = c.cueing.envelope[d];
        envelope[std::string(to_string(d))] = {{"min", l.min}, {"max", l.max}, {"rate", l.max_rate}};
    }
    return {
        {"version", c.version},
        {"timestep", c.timestep},
        {"body", {{"mass", c.mass}, {"inertia", vec_json(c.inertia)}}},
        {"board",
         {{"probes", probes},
          {"probe_height", c.board.probe_height},
          {"drag_linear", vec_json(c.board.drag_linear)},
          {"drag_quadratic", vec_json(c.board.drag_quadratic)},
          {"angular_drag", c.board.angular_drag},
          {"water_density", c.board.water_density},
          {"gravity", c.board.gravity}}},
        {"paddle", {{"scale", c.paddle.scale}, {"hand_offset_x", c.paddle.hand_offset_x}}},
        {"cueing",
         {{"lambda", c.cueing.lambda},
          {"sf1", c.cueing.scaling.sf1},
          {"sf2", c.cueing.scaling.sf2},
          {"sf3", c.cueing.scaling.sf3},
          {"k_heave", c.cueing.scaling.k_heave},
          {"clamp", c.cueing.clamp}}},
        {"envelope", envelope},
        {"washout", {{"omega_n", c.washout.omega_n}, {"zeta", c.washout.zeta}}},
        {"platform", {{"tau", c.platform_tau}}},
        {"ocean",
         {{"preset", std::string(to_string(c.ocean.preset))},
          {"seed", c.ocean.seed},
          {"components", c.ocean.components}}},
        {"output", {{"log", c.output.log}, {"report", c.output.report}, {"frames", c.output.frames}}},
    };
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return {};
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config '" + path.string() + "': " + e.what());
    }
    return config_from_json(doc);
}

void save_config(const SimConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write config file '" + path.string() + "'");
    }
    out << config_to_json(config).dump(2) << '\n';
}

OceanConfig make_ocean(const OceanSettings& s) {
    const std::size_t n = s.components == 0 ? default_component_count(s.preset) : s.components;
    return spectrum_sample(s.seed, s.preset, n);
}

RigidBodyState initial_board_state(const SimConfig& config) {
    RigidBodyState s;
    s.mass = config.mass;
    s.inertia_diag = config.inertia;
    s.position.y = flat_water_equilibrium_height(config.board, config.mass);
    return s;
}

}  // namespace surfsim
