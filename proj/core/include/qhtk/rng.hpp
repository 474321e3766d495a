#pragma once

#include <cstdint>

#include "qhtk/quaternion.hpp"

namespace qhtk {

// splitmix64 + Box-Muller. Deterministic bit-for-bit on any platform,
// which the CSV byte-identity contract of the CLI relies on; the
// standard library distributions are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double gaussian();

    Quaternion gaussian_quaternion() { return {gaussian(), gaussian(), gaussian(), gaussian()}; }

    Quaternion unit_quaternion();

    // Stable derived seed for a named substream; lets sweeps give every
    // sample its own generator without coupling sample order.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
        Rng r(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
        r.state_ += 0x9e3779b97f4a7c15ULL * index;
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qhtk
