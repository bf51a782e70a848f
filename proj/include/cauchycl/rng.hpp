#ifndef CAUCHYCL_RNG_HPP
#define CAUCHYCL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace cauchycl {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Key for a substream: (outer, inner) packed so sweeps can address
/// (grid index, batch index) pairs without collisions below 2^32 each.
inline constexpr std::uint64_t substream_key(std::uint64_t outer, std::uint64_t inner) noexcept {
  return (outer << 32) ^ inner;
}

/// Reproducible pseudorandom stream addressed by (seed, stream_index).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, and the normal variates come from a local polar-method
/// transform, so a given (seed, stream_index) yields the same numbers on
/// every conforming platform. Not thread-safe; use one stream per worker.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_index = 0)
      : seed_(seed), stream_index_(stream_index), engine_(derive_seed(seed, stream_index)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal variate (Marsaglia polar method).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cauchycl

#endif  // CAUCHYCL_RNG_HPP
