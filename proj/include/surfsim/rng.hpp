// Seeded generator with a portable mapping to doubles. The engine output of
// std::mt19937_64 is fully specified; std::uniform_real_distribution is not,
// so the conversion to [0,1) is done here.
#pragma once

#include <cstdint>
#include <random>

namespace surfsim {

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, n); modulo bias is irrelevant for tiny n.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

}  // namespace surfsim
