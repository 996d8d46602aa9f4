#include "surfsim/frame_io.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "surfsim/errors.hpp"

namespace surfsim {

namespace {

constexpr std::array<double PlatformFrame::*, 7> kFields{
    &PlatformFrame::t,     &PlatformFrame::surge, &PlatformFrame::sway, &PlatformFrame::heave,
    &PlatformFrame::pitch, &PlatformFrame::roll,  &PlatformFrame::yaw};

void put_u64_le(std::byte* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out[i] = static_cast<std::byte>((v >> (8 * i)) & 0xFFU);
    }
}

std::uint64_t get_u64_le(const std::byte* in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(std::to_integer<unsigned>(in[i])) << (8 * i);
    }
    return v;
}

}  // namespace

FrameRecord encode_frame(const PlatformFrame& frame) {
    FrameRecord rec{};
    for (std::size_t i = 0; i < kFields.size(); ++i) {
        const double v = frame.*kFields[i];
        if (!std::isfinite(v)) {
            throw FormatError("encode_frame: non-finite field");
        }
        put_u64_le(rec.data() + 8 * i, std::bit_cast<std::uint64_t>(v));
    }
    return rec;
}

PlatformFrame decode_frame(std::span<const std::byte> bytes) {
    if (bytes.size() < kFrameRecordSize) {
        throw FormatError("decode_frame: need 56 bytes, got " + std::to_string(bytes.size()));
    }
    PlatformFrame f;
    for (std::size_t i = 0; i < kFields.size(); ++i) {
        const double v = std::bit_cast<double>(get_u64_le(bytes.data() + 8 * i));
        if (!std::isfinite(v)) {
            throw FormatError("decode_frame: non-finite field");
        }
        f.*kFields[i] = v;
    }
    return f;
}

std::vector<std::byte> frame_file_header() {
    std::vector<std::byte> h;
    for (char c : kFrameFileMagic) h.push_back(static_cast<std::byte>(c));
    for (int i = 0; i < 4; ++i) h.push_back(static_cast<std::byte>((kFrameFileVersion >> (8 * i)) & 0xFFU));
    return h;
}

std::vector<PlatformFrame> read_frame_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open frame file '" + path.string() + "'");
    }
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto header = frame_file_header();
    if (raw.size() < header.size() || std::memcmp(raw.data(), header.data(), header.size()) != 0) {
        throw FormatError("'" + path.string() + "' is not a version 1 frame file");
    }
    const std::size_t body = raw.size() - header.size();
    if (body % kFrameRecordSize != 0) {
        throw FormatError("frame file '" + path.string() + "' ends with a partial record");
    }
    const auto* bytes = reinterpret_cast<const std::byte*>(raw.data() + header.size());
    std::vector<PlatformFrame> frames;
    frames.reserve(body / kFrameRecordSize);
    for (std::size_t off = 0; off < body; off += kFrameRecordSize) {
        frames.push_back(decode_frame({bytes + off, kFrameRecordSize}));
    }
    return frames;
}

FileFrameSink::FileFrameSink(const std::filesystem::path& path) : file_(std::fopen(path.c_str(), "wb")) {
    if (file_ == nullptr) {
        throw FormatError("cannot open frame sink '" + path.string() + "': " + std::strerror(errno));
    }
    const auto header = frame_file_header();
    std::fwrite(header.data(), 1, header.size(), file_);
}

FileFrameSink::~FileFrameSink() {
    if (file_ != nullptr) std::fclose(file_);
}

void FileFrameSink::send(const FrameRecord& record) {
    if (std::fwrite(record.data(), 1, record.size(), file_) != record.size()) {
        throw FormatError("frame sink write failed");
    }
}

UdpFrameSink::UdpFrameSink(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_DGRAM;
    addrinfo* res = nullptr;
    const std::string service = std::to_string(port);
    if (const int rc = getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
        throw FormatError("cannot resolve '" + host + "': " + gai_strerror(rc));
    }
    std::string last_error = "no usable address";
    for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            last_error = std::strerror(errno);
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            fd_ = fd;
            break;
        }
        last_error = std::strerror(errno);
        ::close(fd);
    }
    freeaddrinfo(res);
    if (fd_ < 0) {
        throw FormatError("cannot open UDP sink " + host + ":" + service + ": " + last_error);
    }
}

UdpFrameSink::~UdpFrameSink() {
    if (fd_ >= 0) ::close(fd_);
}

void UdpFrameSink::send(const FrameRecord& record) {
    if (::send(fd_, record.data(), record.size(), 0) != static_cast<ssize_t>(record.size())) {
        throw FormatError(std::string("UDP send failed: ") + std::strerror(errno));
    }
}

std::unique_ptr<FrameSink> make_sink(const std::string& spec) {
    constexpr std::string_view udp = "udp://";
    if (spec.rfind(udp, 0) == 0) {
        const std::string rest = spec.substr(udp.size());
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size()) {
            throw FormatError("UDP sink must look like udp://host:port");
        }
        std::string host = rest.substr(0, colon);
        if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
        int port = 0;
        try {
            port = std::stoi(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw FormatError("UDP sink port is not a number");
        }
        if (port <= 0 || port > 65535) throw FormatError("UDP sink port out of range");
        return std::make_unique<UdpFrameSink>(host, static_cast<std::uint16_t>(port));
    }
    if (spec.empty()) {
        throw FormatError("no frame sink given");
    }
    return std::make_unique<FileFrameSink>(spec);
}

FrameStreamer::FrameStreamer(std::unique_ptr<FrameSink> sink, std::size_t capacity)
    : sink_(std::move(sink)), capacity_(capacity) {
    if (!sink_) throw std::invalid_argument("FrameStreamer: null sink");
    if (capacity_ == 0) throw std::invalid_argument("FrameStreamer: capacity must be > 0");
    worker_ = std::thread([this] { run(); });
}

FrameStreamer::~FrameStreamer() {
    if (worker_.joinable()) finish();
}

void FrameStreamer::push(const PlatformFrame& frame) {
    const FrameRecord rec = encode_frame(frame);
    {
        std::lock_guard lock(mutex_);
        if (queue_.size() >= capacity_) {
            queue_.pop_front();
            ++stats_.dropped;
        }
        queue_.push_back(rec);
    }
    cv_.notify_one();
}

StreamStats FrameStreamer::finish() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    cv_.notify_one();
    if (worker_.joinable()) worker_.join();
    std::lock_guard lock(mutex_);
    return stats_;
}

void FrameStreamer::run() {
    bool failed = false;
    for (;;) {
        FrameRecord rec;
        {
            std::unique_lock lock(mutex_);
            cv_.wait(lock, [this] { return closed_ || !queue_.empty(); });
            if (queue_.empty()) return;
            rec = queue_.front();
            queue_.pop_front();
        }
        if (failed) continue;
        try {
            sink_->send(rec);
            std::lock_guard lock(mutex_);
            ++stats_.sent;
        } catch (const std::exception& e) {
            failed = true;
            std::lock_guard lock(mutex_);
            stats_.error = e.what();
        }
    }
}

StreamStats stream_frames(std::span<const PlatformFrame> frames, double rate_hz, std::unique_ptr<FrameSink> sink,
                          std::size_t capacity) {
    if (!(rate_hz > 0.0)) throw std::invalid_argument("stream_frames: rate must be > 0");
    if (capacity == 0) throw std::invalid_argument("stream_frames: capacity must be > 0");
    FrameStreamer streamer(std::move(sink), capacity);
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const std::chrono::duration<double> period(1.0 / rate_hz);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::this_thread::sleep_until(start + std::chrono::duration_cast<clock::duration>(period * static_cast<double>(i)));
        streamer.push(frames[i]);
    }
    return streamer.finish();
}

StreamStats stream_frames(std::span<const PlatformFrame> frames, double rate_hz, const std::string& sink_spec,
                          std::size_t capacity) {
    if (!(rate_hz > 0.0)) throw std::invalid_argument("stream_frames: rate must be > 0");
    std::unique_ptr<FrameSink> sink;
    try {
        sink = make_sink(sink_spec);
    } catch (const std::exception& e) {
        StreamStats s;
        s.error = e.what();
        return s;
    }
    return stream_frames(frames, rate_hz, std::move(sink), capacity);
}

}  // namespace surfsim
