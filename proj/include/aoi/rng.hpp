#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aoi {

/// Mixes (master, stream, index) into an independent 64-bit seed.
///
/// Every replica of every experiment owns a generator seeded from this
/// function, so results depend only on the master seed and the replica
/// index, never on which worker ran the replica.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index = 0) noexcept;

class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; never returns 0, so -log() stays finite.
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aoi
