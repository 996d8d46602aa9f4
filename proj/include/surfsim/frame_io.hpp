// Binary platform frames and the paced, bounded-queue frame streamer.
//
// Wire record (56 bytes, little-endian IEEE-754 f64):
//   t, surge, sway, heave, pitch, roll, yaw
// Frame files prepend an 8-byte header: "SSFR" then a u32 LE version.
// UDP datagrams carry exactly one bare record.
#pragma once

#include <array>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "surfsim/frame.hpp"

namespace surfsim {

inline constexpr std::size_t kFrameRecordSize = 56;
inline constexpr std::uint32_t kFrameFileVersion = 1;
inline constexpr std::array<char, 4> kFrameFileMagic{'S', 'S', 'F', 'R'};

using FrameRecord = std::array<std::byte, kFrameRecordSize>;

/// Throws FormatError on a non-finite field.
FrameRecord encode_frame(const PlatformFrame& frame);
/// Reads the first 56 bytes. Throws FormatError on a short buffer or a
/// non-finite field.
PlatformFrame decode_frame(std::span<const std::byte> bytes);

std::vector<std::byte> frame_file_header();
/// Throws FormatError on a bad header or a trailing partial record.
std::vector<PlatformFrame> read_frame_file(const std::filesystem::path& path);

class FrameSink {
public:
    virtual ~FrameSink() = default;
    /// Throws on delivery failure.
    virtual void send(const FrameRecord& record) = 0;
};

/// Writes the frame-file header on open. Throws FormatError if the file
/// cannot be created.
class FileFrameSink : public FrameSink {
public:
    explicit FileFrameSink(const std::filesystem::path& path);
    ~FileFrameSink() override;
    FileFrameSink(const FileFrameSink&) = delete;
    FileFrameSink& operator=(const FileFrameSink&) = delete;
    void send(const FrameRecord& record) override;

private:
    std::FILE* file_{nullptr};
};

/// Connected UDP socket; one datagram per record.
class UdpFrameSink : public FrameSink {
public:
    UdpFrameSink(const std::string& host, std::uint16_t port);
    ~UdpFrameSink() override;
    UdpFrameSink(const UdpFrameSink&) = delete;
    UdpFrameSink& operator=(const UdpFrameSink&) = delete;
    void send(const FrameRecord& record) override;

private:
    int fd_{-1};
};

/// "udp://host:port" or a file path.
std::unique_ptr<FrameSink> make_sink(const std::string& spec);

struct StreamStats {
    std::size_t sent{0};
    std::size_t dropped{0};
    std::string error;  // empty on success

    [[nodiscard]] bool ok() const { return error.empty(); }
};

/// Decouples a producer (the simulation step) from a sink running on its own
/// thread. When the queue is full the oldest frame is dropped.
class FrameStreamer {
public:
    FrameStreamer(std::unique_ptr<FrameSink> sink, std::size_t capacity);
    ~FrameStreamer();
    FrameStreamer(const FrameStreamer&) = delete;
    FrameStreamer& operator=(const FrameStreamer&) = delete;

    /// Never blocks on the sink.
    void push(const PlatformFrame& frame);
    /// Drains the queue, stops the worker and returns the totals.
    StreamStats finish();

private:
    void run();

    std::unique_ptr<FrameSink> sink_;
    std::size_t capacity_;
    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<FrameRecord> queue_;
    bool closed_{false};
    StreamStats stats_;
    std::thread worker_;
};

/// Pushes `frames` at `rate_hz` through a FrameStreamer. Sink failures are
/// reported in the result, never thrown. Throws std::invalid_argument if
/// rate_hz <= 0 or capacity == 0.
StreamStats stream_frames(std::span<const PlatformFrame> frames, double rate_hz, std::unique_ptr<FrameSink> sink,
                          std::size_t capacity = 64);

/// As above, opening the sink from a spec string; an unopenable sink yields
/// zero frames sent and a populated error.
StreamStats stream_frames(std::span<const PlatformFrame> frames, double rate_hz, const std::string& sink_spec,
                          std::size_t capacity = 64);

}  // namespace surfsim
