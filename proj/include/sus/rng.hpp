#ifndef SUS_RNG_HPP
#define SUS_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace sus {

// Deterministic random source used throughout the library. All sampling is
// built directly on the mt19937_64 output stream instead of the standard
// <random> distributions, whose byte sequences are implementation-defined.
// Same seed, same call sequence -> same values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution; never returns 1.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {0, ..., n-1}. Requires n >= 1.
  int uniform_int(int n) { return static_cast<int>(uniform01() * n); }

  // Standard normal via Box-Muller; the second variate of a pair is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(std::string_view bytes);

// Independent child seeds from one master seed. Labels name the stream
// ("problems/train", "tuner", ...); indices split a stream per item.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace sus

#endif  // SUS_RNG_HPP
