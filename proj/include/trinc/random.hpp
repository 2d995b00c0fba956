#pragma once

#include <cstdint>

namespace trinc {

// splitmix64 finalizer (Vigna). All deterministic streams in this library
// derive from this mixer so results are reproducible across platforms.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, bound); bound > 0. Rejection-free modulo is fine for the
    // field sizes used here (powers of two) but keep the general form exact.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Seed splitting rule for simulation trials: trial i uses mix64(master ^ i).
// The per-trial stream then yields the transmitter seed followed by one loss
// stream seed per receiver, in receiver-index order.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed ^ trial_index);
}

}  // namespace trinc
