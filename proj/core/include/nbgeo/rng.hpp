#pragma once

#include <cstdint>
#include <random>

namespace nbgeo {

/// Deterministic random source: std::mt19937_64, whose output sequence is
/// fixed by the C++ standard, so seeded runs are bit-identical across
/// platforms. Doubles take the top 53 bits of one draw (no distribution
/// objects, whose algorithms are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 gen_;
};

} // namespace nbgeo
