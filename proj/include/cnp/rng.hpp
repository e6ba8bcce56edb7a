#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cnp {

// Seeded random source with explicitly coded distributions so identical
// seeds give identical streams on every platform (std:: distributions are
// implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
    }

    std::complex<double> unit_phase() {
        const double t = 2.0 * M_PI * uniform();
        return {std::cos(t), std::sin(t)};
    }

    // Uniform w.r.t. area on the annulus r_lo <= |z| <= r_hi.
    std::complex<double> annulus(double r_lo, double r_hi) {
        const double u = uniform();
        const double r = std::sqrt(r_lo * r_lo + u * (r_hi * r_hi - r_lo * r_lo));
        return r * unit_phase();
    }

    std::complex<double> disk(double radius) { return annulus(0.0, radius); }

    double gaussian() {
        // Box-Muller; consumes two uniforms.
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> complex_gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(1.0 - u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    // Independent child stream; decorrelates parallel tasks deterministically.
    Rng spawn(uint64_t stream) {
        uint64_t x = gen_() ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27; x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return Rng(x);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace cnp
