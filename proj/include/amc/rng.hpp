#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <random>
#include <string_view>

namespace amc {

inline constexpr double kPi = 3.14159265358979323846;

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based seed derivation: order-sensitive fold of the inputs.
// Used everywhere a sub-stream is split off, so trial execution order and
// thread count never change which stream a consumer sees.
inline std::uint64_t seed_combine(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t p : parts) h = mix64(h ^ p);
    return h;
}

inline std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

inline std::uint64_t double_bits(double v) {
    std::uint64_t b;
    static_assert(sizeof(b) == sizeof(v));
    std::memcpy(&b, &v, sizeof(b));
    return b;
}

// Deterministic random stream. All distribution transforms are hand-rolled
// from the raw 64-bit output so draws are bit-identical across platforms
// (std::normal_distribution etc. are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [0, n)
    int uniform_int(int n) { return static_cast<int>(uniform() * n); }

    // Box-Muller pair, each N(0, 1).
    void gaussian_pair(double& z0, double& z1) {
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(2.0 * kPi * u2);
        z1 = r * std::sin(2.0 * kPi * u2);
    }

    // Circular complex Gaussian with E|w|^2 = variance.
    std::complex<double> complex_gaussian(double variance) {
        double z0, z1;
        gaussian_pair(z0, z1);
        double s = std::sqrt(variance / 2.0);
        return {s * z0, s * z1};
    }

    // Inverse-CDF Rayleigh with scale sigma: E[x^2] = 2 sigma^2.
    double rayleigh(double sigma) {
        double u = uniform();
        return sigma * std::sqrt(-2.0 * std::log(1.0 - u));
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace amc
