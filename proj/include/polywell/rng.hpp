#pragma once

#include <cmath>
#include <cstdint>

namespace polywell {

// splitmix64 step. Fixed here (not std::mt19937) so seeded runs reproduce
// bit-for-bit across standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // decorrelate trivially related seeds
        next_u64();
    }

    // Independent stream for item `index` of a run seeded with `seed`.
    // Counter-based so parallel consumers see the same streams as a
    // sequential walk.
    static Rng derived(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t mixed = splitmix64(s) ^ (0x9e3779b97f4a7c15ull * (index + 1));
        return Rng(mixed);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // One Box-Muller draw per call; the sine branch is discarded to keep the
    // stream position independent of call parity.
    double normal() {
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace polywell
