#include "glab/random.hpp"

#include <limits>

namespace glab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace

Rng Rng::split(std::uint64_t index) const { return Rng(splitmix64(seed_ ^ splitmix64(index))); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Scalar Rng::scalar(Field f) {
  if (f.is_rational()) return Scalar(between(-kSampleBound, kSampleBound), f);
  return Scalar(static_cast<long>(below(f.modulus())), f);
}

Scalar Rng::nonzero_scalar(Field f) {
  Scalar s = scalar(f);
  while (s.is_zero()) s = scalar(f);
  return s;
}

std::vector<Scalar> Rng::point(std::size_t len, Field f) {
  std::vector<Scalar> v;
  for (;;) {
    v.clear();
    bool nonzero = false;
    for (std::size_t i = 0; i < len; ++i) {
      v.push_back(scalar(f));
      nonzero = nonzero || !v.back().is_zero();
    }
    if (nonzero || len == 0) return v;
  }
}

std::uint64_t Rng::sample_set_size(Field f) {
  return f.is_rational() ? static_cast<std::uint64_t>(2 * kSampleBound + 1) : f.modulus();
}

}  // namespace glab
