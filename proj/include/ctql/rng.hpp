#pragma once

#include <cstdint>
#include <random>

namespace ctql {

// Named substreams derived from one master seed. Each (trial, kind, agent)
// triple gets an independent generator, so e.g. extra exploration draws for
// one herder never perturb the environment noise of any target.
enum class StreamKind : std::uint64_t {
    InitialConditions = 1,
    EnvNoise = 2,
    Exploration = 3,
};

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t trial,
                                    StreamKind kind, std::uint64_t agent = 0) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ trial);
    s = splitmix64(s ^ static_cast<std::uint64_t>(kind));
    s = splitmix64(s ^ agent);
    return s;
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    RngStream(std::uint64_t master, std::uint64_t trial, StreamKind kind,
              std::uint64_t agent = 0)
        : gen_(substream_seed(master, trial, kind, agent)) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    // Uniform in {0, ..., n-1}.
    std::uint32_t uniform_index(std::uint32_t n) {
        return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace ctql
