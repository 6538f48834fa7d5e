#ifndef OHD_RANDOM_HPP
#define OHD_RANDOM_HPP

#include <cstdint>

namespace ohd {

/// SplitMix64: tiny seeded generator used for random profiles and test
/// fields, chosen so other-language reimplementations reproduce streams
/// exactly from the 64-bit seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state;
};

} // namespace ohd

#endif
