#include "sandrank/rng.hpp"

namespace sandrank {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    // Largest multiple of bound representable in 64 bits, as a rejection threshold.
    const std::uint64_t limit = bound == 0 ? 0 : ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
        const std::uint64_t x = next();
        if (x <= limit) return x % bound;
    }
}

} // namespace sandrank
