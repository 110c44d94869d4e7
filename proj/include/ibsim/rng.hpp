// Deterministic RNG contract.
//
// Every run consumes a single stream in a fixed, documented order:
//   1. network build (community informal ties, professional informal ties,
//      inter-group ties, announcement source),
//   2. event schedule,
//   3. per tick: agent-order shuffle, then one draw per agent action.
// All bounded draws go through uniform_index below; replaying the same seed
// therefore reproduces a run bit for bit.

#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace ibsim {

// splitmix64 finalizer (Steele, Lea & Flood / Vigna).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-run seed: two splitmix64 rounds over master_seed XOR run_index.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
    std::uint64_t z = master_seed ^ run_index;
    z = splitmix64_mix(z + 0x9e3779b97f4a7c15ULL);
    z = splitmix64_mix(z + 0x9e3779b97f4a7c15ULL);
    return z;
}

// mt19937_64 with fully pinned bounded/real/shuffle draws. The standard
// distributions are implementation defined, so they are not used here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, n). Rejects the top partial cycle of 2^64
    // and reduces mod n.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t umax = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t tail = (umax % n + 1) % n;  // 2^64 mod n
        const std::uint64_t max_accept = umax - tail;
        std::uint64_t r = engine_();
        while (r > max_accept) r = engine_();
        return r % n;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Fisher-Yates, high index down, one uniform_index per step.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ibsim
