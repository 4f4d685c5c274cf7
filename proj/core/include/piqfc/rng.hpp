#ifndef PIQFC_RNG_HPP
#define PIQFC_RNG_HPP

#include <cstdint>
#include <random>

namespace piqfc {

/// Seeded generator with samplers whose output is fully determined by the
/// seed (mt19937_64 stream plus fixed transformation algorithms, no
/// implementation-defined std distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal();

    /// Poisson variate; inversion for small mean, Hormann's PTRS transformed
    /// rejection for mean >= 10.
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Deterministic seed-splitting rule for parallel substreams
/// (splitmix64-style finalizer over seed and index).
std::uint64_t hash64(std::uint64_t seed, std::uint64_t index);

} // namespace piqfc

#endif
