#pragma once

#include <cmath>
#include <cstdint>

#include "qostbc/types.hpp"

namespace qostbc {

// Counter-style generator built on the splitmix64 output function.
// Substreams are keyed by up to three 64-bit values, so every Monte Carlo
// trial owns an independent stream addressed by (seed, point index, trial
// index). That keying -- not thread scheduling -- decides every random draw,
// which is what makes sweep results identical for any worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : state_(mix(key + kGamma)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t k = mix(seed + kGamma);
    k = mix(k ^ (a + 0x8000000000000001ULL));
    k = mix(k ^ (b + 0x5851F42D4C957F2DULL));
    return Rng(k);
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  // uniform on (0, 1] -- never 0, safe under log()
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // unbiased for n that divide 2^64; negligible (2^-64) bias otherwise
  std::uint32_t uniform_int(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // standard normal via Box-Muller, one spare value cached
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // circular complex Gaussian, unit total variance (real/imag each N(0, 1/2))
  cxd cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cxd(re * M_SQRT1_2, im * M_SQRT1_2);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qostbc
