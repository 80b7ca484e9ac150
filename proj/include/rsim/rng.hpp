#ifndef RSIM_RNG_HPP
#define RSIM_RNG_HPP

#include <cstdint>
#include <cmath>

#include "rsim/common.hpp"

namespace rsim {

/// Counter-splittable PRNG (splitmix64 core). std::mt19937 would do, but the
/// standard <random> distributions are implementation-defined, which breaks
/// the byte-identical reproducibility contract across platforms. Everything
/// here is fully specified arithmetic on uint64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0,1); never returns 0 so it is safe inside log().
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (exactly specified, unlike
    /// std::normal_distribution).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly-symmetric complex Gaussian CN(0, var): two independent real
    /// normals scaled by sqrt(var/2) per component.
    cplx cnormal(double var) {
        double s = std::sqrt(var * 0.5);
        double re = normal();
        double im = normal();
        return cplx(s * re, s * im);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Derives an independent stream seed from a master seed and up to four
/// stream coordinates (scheme-free coordinates keep channel/noise draws
/// paired across schemes). This is the counter-based split every module uses;
/// no RNG state is ever shared between work items.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0,
                                 std::uint64_t d = 0) {
    std::uint64_t h = master ^ 0x2545f4914f6cdd1dULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
    };
    mix(a);
    mix(b);
    mix(c);
    mix(d);
    return h;
}

/// Stream purposes; kept distinct so e.g. channel and noise streams derived
/// from the same (snr, draw) coordinates never collide.
enum class StreamTag : std::uint64_t {
    channel = 1,
    noise = 2,
    location = 3,
    outer_subsample = 4,
    calibration = 5,
};

inline std::uint64_t derive_seed(std::uint64_t master, StreamTag tag,
                                 std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    return derive_seed(master, static_cast<std::uint64_t>(tag), a, b, c);
}

} // namespace rsim

#endif
