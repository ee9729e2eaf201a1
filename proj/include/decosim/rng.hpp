#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace decosim {

// SplitMix64: 64 bits of state, passes BigCrush, and cheap enough to derive
// one independent stream per trajectory from (master seed, stream index).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static SplitMix64 for_stream(std::uint64_t master_seed, std::uint64_t stream) {
        const std::uint64_t s = mix(master_seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
        return SplitMix64(mix(s ^ 0x94D049BB133111EBULL));
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        return mix(z);
    }

    // uniform in (0, 1)
    double next_unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Box-Muller, producing standard normals in pairs.
class GaussianStream {
public:
    explicit GaussianStream(SplitMix64 rng) : rng_(rng) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(rng_.next_unit()));
        const double phi = 2.0 * std::numbers::pi * rng_.next_unit();
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace decosim
