#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "glab/scalar.hpp"

namespace glab {

/// Rational samples are integers drawn uniformly from [-kSampleBound, kSampleBound].
inline constexpr long kSampleBound = 1000;

/// Seeded generator. Bounded draws use rejection on raw 64-bit output so the
/// stream does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Independent stream for trial `index`; same (seed, index) gives the same stream.
  Rng split(std::uint64_t index) const;

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);
  long between(long lo, long hi);

  Scalar scalar(Field f);
  Scalar nonzero_scalar(Field f);
  /// A vector of `len` field samples, redrawn until not all zero.
  std::vector<Scalar> point(std::size_t len, Field f);

  /// Number of values scalar() can produce; used for Schwartz-Zippel bounds.
  static std::uint64_t sample_set_size(Field f);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace glab
