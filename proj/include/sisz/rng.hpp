#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace sisz {

// SplitMix64 finalizer; also used for stable seed derivation.
std::uint64_t mix64(std::uint64_t x);

// Stable derivation of a child seed, e.g. per trial or per sweep cell.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Counter-based generator: output i of stream (seed, stream) is
/// mix64(key + i * gamma) with key = derive_seed(seed, stream). Streams are
/// independent and every draw is reproducible from (seed, stream, counter).
///
/// Satisfies UniformRandomBitGenerator. Normal and bounded-integer transforms
/// are implemented here rather than via <random> distributions so sample
/// sequences do not depend on the standard library vendor.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Standard normal via Box-Muller.
  double normal();
  // Uniform on [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  Rng split(std::uint64_t stream) const { return Rng(seed_, derive_seed(stream_, stream)); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

}  // namespace sisz
