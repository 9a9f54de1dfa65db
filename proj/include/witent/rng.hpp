#pragma once

// Seedable, portable random streams.
//
// Engine: std::mt19937_64 seeded through std::seed_seq with the four 32-bit
// words (seed_lo, seed_hi, stream_lo, stream_hi). Both algorithms are fully
// specified by the standard, so a (seed, stream) pair yields the same sequence
// on every conforming implementation.
//
// Stream-splitting rule: task i of a batch run with base seed s draws from
// Rng(s, i). Results therefore do not depend on how tasks are scheduled.
//
// Gaussians use Box-Muller rather than std::normal_distribution, whose
// algorithm is implementation-defined.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace witent {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Independent child stream for sub-task k of this stream.
  Rng split(std::uint64_t k) const { return Rng(seed_ ^ (0x9E3779B97F4A7C15ULL * (stream_ + 1)), k); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace witent
