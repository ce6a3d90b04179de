#ifndef HEIS_RNG_HPP
#define HEIS_RNG_HPP

#include <cstdint>

namespace heis {

// Counter-based generator (splitmix64 finalizer): sample k of a stream is a
// pure function of (seed, k), so parallel or reordered evaluation cannot
// change the draw sequence.
struct CounterRng {
    std::uint64_t seed = 42;

    double uniform(std::uint64_t counter) const {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (counter + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double range(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }
};

} // namespace heis

#endif
