#pragma once

#include <memory>
#include <mutex>

#include "glab/matrix.hpp"

namespace glab {

/// Linear subspace of P^N held by its canonical rref spanning rows.
///
/// Projective dimension is rows - 1, so the empty subspace has dimension -1.
/// The equation (dual) form is computed on first use and shared between copies.
class ProjSubspace {
 public:
  /// Canonical subspace spanned by the rows of m (ambient N = m.cols() - 1).
  static ProjSubspace from_rows(const Matrix& m);
  static ProjSubspace empty(std::size_t ambient, Field field);
  static ProjSubspace whole(std::size_t ambient, Field field);
  /// Zero set of the rows of `equations`.
  static ProjSubspace from_equations(const Matrix& equations);

  std::size_t ambient() const { return basis_.cols() - 1; }
  int dim() const { return static_cast<int>(basis_.rows()) - 1; }
  Field field() const { return basis_.field(); }
  const Matrix& basis() const { return basis_; }
  /// Canonical rows of the linear forms vanishing on the subspace.
  const Matrix& equations() const;
  bool contains_point(std::span<const Scalar> v) const;

  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit ProjSubspace(Matrix canonical_basis);

  struct DualCache {
    std::once_flag once;
    std::unique_ptr<Matrix> equations;
  };

  Matrix basis_;
  std::shared_ptr<DualCache> dual_;
};

/// A subspace of projective dimension exactly 1.
class Line {
 public:
  explicit Line(ProjSubspace s);
  static Line from_rows(const Matrix& m) { return Line(ProjSubspace::from_rows(m)); }

  const ProjSubspace& subspace() const { return s_; }
  const Matrix& basis() const { return s_.basis(); }
  std::size_t ambient() const { return s_.ambient(); }
  Field field() const { return s_.field(); }

  operator const ProjSubspace&() const { return s_; }
  friend bool operator==(const Line& a, const Line& b) { return a.s_ == b.s_; }

 private:
  ProjSubspace s_;
};

ProjSubspace subspace_from_rows(const Matrix& m);
ProjSubspace span(const ProjSubspace& a, const ProjSubspace& b);
ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b);
/// True iff b is a subspace of a.
bool contains(const ProjSubspace& a, const ProjSubspace& b);
bool line_meets(const Line& l, const ProjSubspace& p);

/// Every point of P^dim over a prime field, first nonzero coordinate 1, in
/// lexicographic order of coordinate residues. Intended for small primes.
std::vector<std::vector<Scalar>> projective_points(std::size_t dim, Field f);

}  // namespace glab
