#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace smbm {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Collapse (master_seed, point, counter) into one well-mixed 64-bit seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t point, std::uint64_t counter) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (point + 0x9e3779b97f4a7c15ull);
    h = splitmix64(s);
    s = h ^ (counter + 0xbf58476d1ce4e5b9ull);
    return splitmix64(s);
}

// One independent random stream per (seed, SNR point, block) triple.
// mt19937_64 is fully specified by the standard and Box-Muller below uses
// only elementary functions, so the draw sequence is identical on every
// conforming toolchain. std::normal_distribution is deliberately avoided
// (its algorithm is implementation-defined).
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t point, std::uint64_t counter)
        : eng_(mix_seed(master_seed, point, counter)) {}

    std::uint64_t u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // top n bits of one draw, n in [0, 64]
    std::uint64_t bits(int n) {
        if (n <= 0) return 0;
        return eng_() >> (64 - n);
    }

    // circularly-symmetric complex Gaussian, total variance `var`
    // (real and imaginary parts each var/2), polar Box-Muller
    std::complex<double> cgauss(double var) {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-var * std::log(u1));
        double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace smbm
