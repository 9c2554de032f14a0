#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace caloron {

/// Counter-based deterministic generator: output i of stream `seed` is
/// splitmix64(seed XOR golden-weyl(i)). Stateless apart from the counter, so
/// identical (seed, counter) always yields identical values on every platform;
/// substreams are formed by deriving a child seed, never by sharing a counter.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t next_u64() { return mix(seed_ ^ weyl(counter_++)); }

    /// Uniform in [0,1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo,hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(6.283185307179586476925286766559 * u2);
        have_spare_ = true;
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::complex<double> next_complex_gaussian() {
        return {next_gaussian(), next_gaussian()};
    }

    /// Independent child stream; deterministic in (parent seed, label).
    CounterRng child(std::uint64_t label) const {
        return CounterRng(mix(seed_ ^ weyl(~label)));
    }

private:
    static std::uint64_t weyl(std::uint64_t i) {
        return i * 0x9e3779b97f4a7c15ull;
    }
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace caloron
