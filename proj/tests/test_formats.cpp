#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <bit>
#include <charconv>
#include <condition_variable>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "surfsim/csv.hpp"
#include "surfsim/errors.hpp"
#include "surfsim/frame_io.hpp"
#include "surfsim/rng.hpp"

using namespace surfsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const char* env = std::getenv("SURFSIM_TEST_TMP");
    const fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "surfsim_format_tests";
    fs::create_directories(dir);
    return dir;
}

PlatformFrame random_frame(SeededRng& rng) {
    return {rng.uniform(0, 100), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1),
            rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.3, 0.3)};
}

std::string log_text(const SimulationLog& log) {
    std::ostringstream out;
    write_log_csv(log, out);
    return out.str();
}

// Collects records; blocks inside send() until released.
class GatedSink : public FrameSink {
public:
    void send(const FrameRecord& record) override {
        std::unique_lock lock(mutex_);
        entered_ = true;
        cv_.notify_all();
        cv_.wait(lock, [&] { return open_; });
        records.push_back(record);
    }
    void wait_until_blocked() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return entered_; });
    }
    void release() {
        std::lock_guard lock(mutex_);
        open_ = true;
        cv_.notify_all();
    }
    std::vector<FrameRecord> records;

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    bool entered_{false};
    bool open_{false};
};

}  // namespace

TEST_CASE("shortest round-trip number formatting") {
    SeededRng rng(2);
    for (int i = 0; i < 2000; ++i) {
        const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-12, 6));
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(std::bit_cast<std::uint64_t>(back) == std::bit_cast<std::uint64_t>(v));
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("log CSV round-trips exactly") {
    SimConfig cfg;
    cfg.ocean.preset = OceanPreset::ripples;
    cfg.ocean.seed = 8;
    const SimulationLog log = run_scenario(cfg, PassiveScenario{2.0, std::nullopt});
    const std::string text = log_text(log);
    CHECK(text.rfind("# surfsim-log v1", 0) == 0);
    std::istringstream in(text);
    const SimulationLog back = read_log_csv(in);
    CHECK(back.dt == log.dt);
    REQUIRE(back.rows.size() == log.rows.size());
    CHECK(log_text(back) == text);
    CHECK(back.rows[50].state == log.rows[50].state);
    CHECK(back.rows[50].commanded == log.rows[50].commanded);
}

TEST_CASE("malformed logs are rejected") {
    std::istringstream wrong_header("t,x\n0,1\n");
    CHECK_THROWS_AS(read_log_csv(wrong_header), FormatError);
    CHECK_THROWS_AS(read_log_csv(temp_dir() / "missing.csv"), FormatError);
}

TEST_CASE("hand traces") {
    StrokePattern p;
    p.duration = 1.0;
    const auto trace = generate_strokes(p);
    std::stringstream io;
    write_hand_trace(trace, io);
    CHECK(read_hand_trace(io) == trace);

    std::istringstream commented("# from the tracker\nt,lx,ly,lz,rx,ry,rz\n0,0,0,0,0,0,0\n0.01,1,1,1,1,1,1\n");
    CHECK(read_hand_trace(commented).size() == 2);
    std::istringstream backwards("t,lx,ly,lz,rx,ry,rz\n0.5,0,0,0,0,0,0\n0.1,0,0,0,0,0,0\n");
    CHECK_THROWS(read_hand_trace(backwards));
    std::istringstream short_row("t,lx,ly,lz,rx,ry,rz\n0.5,0,0\n");
    CHECK_THROWS(read_hand_trace(short_row));
}

TEST_CASE("binary frame layout") {
    const PlatformFrame f{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -2.0};
    const FrameRecord r = encode_frame(f);
    // 1.0 = 0x3FF0000000000000, little endian.
    CHECK(r[6] == std::byte{0xF0});
    CHECK(r[7] == std::byte{0x3F});
    CHECK(r[55] == std::byte{0xC0});
}

TEST_CASE("binary frames round-trip bitwise") {
    SeededRng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const PlatformFrame f = random_frame(rng);
        const FrameRecord r = encode_frame(f);
        const PlatformFrame g = decode_frame(r);
        CHECK(std::memcmp(&f, &g, sizeof f) == 0);
    }
    const FrameRecord r = encode_frame({});
    CHECK_THROWS_AS(decode_frame(std::span(r).first(40)), FormatError);
    PlatformFrame nan;
    nan.roll = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(encode_frame(nan), FormatError);
}

TEST_CASE("frame file stream matches the CSV log") {
    StrokePattern p;
    p.duration = 2.0;
    const SimulationLog log = run_scenario(SimConfig{}, PaddleScenario{generate_strokes(p), 2.0});
    const fs::path csv = temp_dir() / "stream.csv";
    const fs::path bin = temp_dir() / "stream.frames";
    write_log_csv(log, csv);
    const auto frames = read_log_csv(csv).commanded_frames();
    const StreamStats st = stream_frames(frames, 1e6, bin.string(), frames.size());
    CHECK(st.ok());
    CHECK(st.sent == frames.size());
    CHECK(st.dropped == 0);
    CHECK(read_frame_file(bin) == log.commanded_frames());
}

TEST_CASE("stalled sink drops the oldest frames and keeps the newest") {
    auto owned = std::make_unique<GatedSink>();
    GatedSink* sink = owned.get();
    FrameStreamer streamer(std::move(owned), 4);
    std::vector<PlatformFrame> frames;
    for (int i = 0; i < 100; ++i) frames.push_back(PlatformFrame{i * 0.01, 0, 0, 0, 0, 0, 0});
    streamer.push(frames[0]);
    sink->wait_until_blocked();
    for (int i = 1; i < 100; ++i) streamer.push(frames[i]);
    sink->release();
    const StreamStats st = streamer.finish();
    CHECK(st.ok());
    CHECK(st.dropped > 0);
    CHECK(st.sent + st.dropped == frames.size());
    REQUIRE(!sink->records.empty());
    CHECK(decode_frame(sink->records.back()) == frames.back());
}

TEST_CASE("UDP sink sends one datagram per frame") {
    const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    REQUIRE(fd >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    socklen_t len = sizeof addr;
    REQUIRE(::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0);
    timeval tv{2, 0};
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);

    SeededRng rng(4);
    std::vector<PlatformFrame> frames;
    for (int i = 0; i < 10; ++i) frames.push_back(random_frame(rng));
    const std::string spec = "udp://127.0.0.1:" + std::to_string(ntohs(addr.sin_port));
    const StreamStats st = stream_frames(frames, 1000.0, spec, 16);
    CHECK(st.ok());
    CHECK(st.sent == 10);

    for (const auto& f : frames) {
        std::array<std::byte, 128> buf{};
        const ssize_t n = ::recv(fd, buf.data(), buf.size(), 0);
        REQUIRE(n == static_cast<ssize_t>(kFrameRecordSize));
        CHECK(decode_frame(std::span(buf).first(kFrameRecordSize)) == f);
    }
    ::close(fd);
}

TEST_CASE("bad sinks are reported, not thrown") {
    const std::vector<PlatformFrame> frames(3);
    CHECK_FALSE(stream_frames(frames, 100.0, "udp://nohost", 4).ok());
    CHECK_FALSE(stream_frames(frames, 100.0, "udp://127.0.0.1:99999", 4).ok());
    CHECK_FALSE(stream_frames(frames, 100.0, "/nonexistent/dir/out.frames", 4).ok());
    CHECK_THROWS_AS(make_sink(""), FormatError);
    CHECK_THROWS_AS(read_frame_file(temp_dir() / "absent.frames"), FormatError);
}

TEST_CASE("identical runs produce identical logs") {
    SimConfig cfg;
    cfg.ocean.preset = OceanPreset::ripples;
    cfg.ocean.seed = 21;
    const Scenario s = PassiveScenario{3.0, std::nullopt};
    CHECK(log_text(run_scenario(cfg, s)) == log_text(run_scenario(cfg, s)));
}
