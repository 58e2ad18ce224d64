#pragma once

#include <cstdint>
#include <random>

namespace memkit {

// Deterministic random draws on top of mt19937_64. The standard
// distribution adaptors are implementation-defined, so uniform, normal and
// gamma variates are generated here explicitly: identical seeds give
// bit-identical streams on any conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via the inverse CDF.
    double normal();

    // Gamma(shape, rate 1) by the Marsaglia-Tsang rejection scheme.
    double gamma(double shape);

    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// Seed-splitting rule for independent replications: replication r of a run
// seeded with s uses splitmix64(s + (r + 1) * 0x9E3779B97F4A7C15).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t replication);

}  // namespace memkit
