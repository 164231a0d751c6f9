#pragma once

#include <cstdint>
#include <random>

namespace scardo {

/// Seeded random stream behind every stochastic run: mt19937_64 with
/// explicit mappings to doubles and index ranges, so a (seed, draw index)
/// pair fixes the value regardless of standard-library distribution
/// internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). n must be positive.
    std::size_t next_index(std::size_t n) { return map_index(next_double(), n); }

    /// floor(u * n) clamped to n - 1.
    static std::size_t map_index(double u, std::size_t n) {
        auto i = static_cast<std::size_t>(u * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    /// Seed for replica `replica` of a sweep with the given master seed:
    /// output replica+1 of the splitmix64 stream started at the master
    /// seed. Keeps replica streams decorrelated and the derivation
    /// documented.
    static std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica) {
        std::uint64_t z = master_seed + (replica + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace scardo
