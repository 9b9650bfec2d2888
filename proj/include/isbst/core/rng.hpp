#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace isbst {

/// splitmix64 finalizer; used to derive independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t value);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Seeded PRNG with platform-independent output. The engine is the standard
/// mt19937_64 and every conversion to reals or indices is done here rather than
/// by <random> distributions, whose output is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+splitmix64/v1";

  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform in [0, n); n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace isbst
