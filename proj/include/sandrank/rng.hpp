#pragma once

// Portable random streams. The engine is MT19937-64, whose output sequence is
// fixed by the C++ standard, and every conversion to a Bernoulli or uniform
// residue is done here bit-exactly rather than through the implementation
// defined <random> distributions.

#include <cstdint>
#include <random>

namespace sandrank {

/// SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of sub-stream `index` under `master`. Depends only on the two values,
/// so trials can run in any order or on any thread.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// One draw; true with probability q.
    bool bernoulli(double q) { return unit() < q; }

    /// Uniform integer in [0, bound) by rejection, bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

} // namespace sandrank
