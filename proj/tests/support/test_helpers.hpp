#pragma once

#include <vector>

#include "glab/matrix.hpp"
#include "glab/random.hpp"

namespace glab::testing {

inline const Field kQ = Field::rationals();

inline std::vector<Scalar> ints(std::initializer_list<long> values, Field f = kQ) {
  std::vector<Scalar> out;
  for (long v : values) out.emplace_back(v, f);
  return out;
}

/// Random matrix with entries in [-bound, bound] (rationals) or uniform residues,
/// optionally forced to have rank <= max_rank by multiplying two thin factors.
inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, Field f, long bound = 5,
                            std::size_t max_rank = static_cast<std::size_t>(-1)) {
  auto draw = [&] { return f.is_rational() ? Scalar(rng.between(-bound, bound), f) : rng.scalar(f); };
  if (max_rank >= std::min(rows, cols)) {
    Matrix m(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = draw();
    return m;
  }
  Matrix a(rows, max_rank, f);
  Matrix b(max_rank, cols, f);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < max_rank; ++j) a(i, j) = draw();
  for (std::size_t i = 0; i < max_rank; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = draw();
  return a * b;
}

/// Row spaces equal: rank(A) = rank(B) = rank([A; B]).
inline bool same_row_space(const Matrix& a, const Matrix& b) {
  const auto ra = rank(a);
  return ra == rank(b) && ra == rank(vstack(a, b));
}

}  // namespace glab::testing
