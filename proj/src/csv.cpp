#include "surfsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "surfsim/errors.hpp"

namespace surfsim {

namespace {

constexpr std::string_view kLogMagic = "# surfsim-log v1";
constexpr std::string_view kTraceHeader = "t,lx,ly,lz,rx,ry,rz";

std::vector<std::string> log_columns() {
    std::vector<std::string> cols{"t",  "px", "py", "pz", "qw", "qx", "qy", "qz", "vx", "vy", "vz", "wx", "wy", "wz"};
    for (const char* group : {"raw", "filt"}) {
        for (const char* ch : {"ax", "ay", "az", "alx", "aly", "alz", "vx", "vy", "vz"}) {
            cols.push_back(std::string(group) + "_" + ch);
        }
    }
    for (const char* group : {"req", "cmd", "ach"}) {
        for (Dof d : kAllDofs) cols.push_back(std::string(group) + "_" + std::string(to_string(d)));
    }
    cols.emplace_back("sources");
    return cols;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::size_t line_no) {
    while (!s.empty() && (s.front() == ' ')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": '" + std::string(s) + "' is not a number");
    }
    return v;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

void put(std::ostream& out, const Vec3& v) {
    out << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(v.z);
}

void put(std::ostream& out, const BoardKinematics& k) {
    put(out, k.lin_accel);
    put(out, k.ang_accel);
    put(out, k.lin_vel);
}

void put(std::ostream& out, const PlatformFrame& f) {
    for (Dof d : kAllDofs) out << ',' << format_double(f[d]);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path.string() + "'");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) throw FormatError("cannot format number");
    return {buf.data(), ptr};
}

void write_log_csv(const SimulationLog& log, std::ostream& out) {
    out << kLogMagic << " dt=" << format_double(log.dt) << '\n';
    const auto cols = log_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : log.rows) {
        out << format_double(r.t);
        put(out, r.state.position);
        const Quat& q = r.state.orientation;
        out << ',' << format_double(q.w) << ',' << format_double(q.x) << ',' << format_double(q.y) << ','
            << format_double(q.z);
        put(out, r.state.linear_velocity);
        put(out, r.state.angular_velocity);
        put(out, r.raw);
        put(out, r.filtered);
        put(out, r.requested);
        put(out, r.commanded);
        put(out, r.achieved);
        out << ',' << r.sources << '\n';
    }
}

void write_log_csv(const SimulationLog& log, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_log_csv(log, out);
}

SimulationLog read_log_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty log file");
    strip_cr(line);
    const std::string dt_key = std::string(kLogMagic) + " dt=";
    if (line.rfind(dt_key, 0) != 0) throw FormatError("not a surfsim v1 log (missing '# surfsim-log v1' line)");
    SimulationLog log;
    log.dt = parse_double(std::string_view(line).substr(dt_key.size()), 1);

    const auto cols = log_columns();
    if (!std::getline(in, line)) throw FormatError("log is missing its column header");
    strip_cr(line);
    const auto header = split(line);
    if (header.size() != cols.size()) throw FormatError("log header has the wrong number of columns");
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (header[i] != cols[i]) throw FormatError("unexpected log column '" + std::string(header[i]) + "'");
    }

    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != cols.size()) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols.size()) + " fields");
        }
        std::size_t i = 0;
        const auto next = [&] { return parse_double(f[i++], line_no); };
        const auto vec = [&] {
            const double x = next();
            const double y = next();
            const double z = next();
            return Vec3{x, y, z};
        };
        const auto kin = [&] {
            BoardKinematics k;
            k.lin_accel = vec();
            k.ang_accel = vec();
            k.lin_vel = vec();
            return k;
        };
        const auto frame = [&](double t) {
            PlatformFrame pf;
            pf.t = t;
            for (Dof d : kAllDofs) pf[d] = next();
            return pf;
        };
        LogRow r;
        r.t = next();
        r.state.position = vec();
        r.state.orientation.w = next();
        r.state.orientation.x = next();
        r.state.orientation.y = next();
        r.state.orientation.z = next();
        r.state.linear_velocity = vec();
        r.state.angular_velocity = vec();
        r.raw = kin();
        r.filtered = kin();
        r.requested = frame(r.t);
        r.commanded = frame(r.t);
        r.achieved = frame(r.t);
        const double src = next();
        r.sources = static_cast<unsigned>(src);
        log.rows.push_back(r);
    }
    return log;
}

SimulationLog read_log_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_log_csv(in);
}

std::vector<HandSample> read_hand_trace(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<HandSample> trace;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (!have_header) {
            if (line.empty() || line.front() == '#') continue;
            std::string compact;
            for (char c : line) {
                if (c != ' ') compact.push_back(c);
            }
            if (compact != kTraceHeader) {
                throw FormatError("hand trace header must be '" + std::string(kTraceHeader) + "'");
            }
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 7) throw FormatError("line " + std::to_string(line_no) + ": expected 7 fields");
        HandSample s;
        s.t = parse_double(f[0], line_no);
        s.left = {parse_double(f[1], line_no), parse_double(f[2], line_no), parse_double(f[3], line_no)};
        s.right = {parse_double(f[4], line_no), parse_double(f[5], line_no), parse_double(f[6], line_no)};
        if (!trace.empty() && !(s.t > trace.back().t)) {
            throw FormatError("line " + std::to_string(line_no) + ": t must strictly increase");
        }
        trace.push_back(s);
    }
    if (!have_header) throw FormatError("hand trace has no header");
    return trace;
}

std::vector<HandSample> read_hand_trace(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_hand_trace(in);
}

void write_hand_trace(const std::vector<HandSample>& trace, std::ostream& out) {
    out << "# surfsim-trace v1\n" << kTraceHeader << '\n';
    for (const auto& s : trace) {
        out << format_double(s.t);
        put(out, s.left);
        put(out, s.right);
        out << '\n';
    }
}

void write_hand_trace(const std::vector<HandSample>& trace, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_hand_trace(trace, out);
}

}  // namespace surfsim
