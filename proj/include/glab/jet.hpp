#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "glab/scalar.hpp"

namespace glab {

/// First-order jet: value + sum_d inf[d] * eps_d with eps_d * eps_e = 0.
///
/// An empty infinitesimal vector stands for the zero vector, which keeps
/// constants cheap inside large jet matrices.
class Jet {
 public:
  Jet(Scalar value, std::size_t directions) : value_(std::move(value)), directions_(directions) {}
  Jet(Scalar value, std::vector<Scalar> inf);

  /// value + eps_direction.
  static Jet variable(Scalar value, std::size_t direction, std::size_t directions);

  const Scalar& value() const { return value_; }
  std::size_t directions() const { return directions_; }
  Field field() const { return value_.field(); }
  bool has_infinitesimal() const { return !inf_.empty(); }
  /// Component along one direction.
  Scalar infinitesimal(std::size_t d) const;
  /// Full infinitesimal vector, zeros materialized.
  std::vector<Scalar> infinitesimal() const;
  bool is_zero() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator*=(const Scalar& s);
  /// Requires o.value() != 0.
  Jet& operator/=(const Jet& o);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator*(Jet a, const Scalar& s) { return a *= s; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend bool operator==(const Jet& a, const Jet& b);

 private:
  void require_compatible(const Jet& o) const;

  Scalar value_;
  std::size_t directions_;
  std::vector<Scalar> inf_;
};

/// Dense matrix of jets sharing one direction count.
class JetMatrix {
 public:
  JetMatrix(std::size_t rows, std::size_t cols, Field field, std::size_t directions);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t directions() const { return directions_; }
  Field field() const { return field_; }

  Jet& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Jet& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  JetMatrix select_columns(std::span<const std::size_t> idx) const;
  JetMatrix select_rows(std::span<const std::size_t> idx) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::size_t directions_;
  std::vector<Jet> data_;
};

/// Laplace expansion, memoized over column subsets.
Jet jet_determinant_cofactor(const JetMatrix& m);
/// Elimination with unit pivots; when a column has no unit pivot left, the
/// determinant is expanded along it against cofactors of the value matrix.
Jet jet_determinant_elimination(const JetMatrix& m);
/// Cofactor expansion up to 6x6, elimination above.
Jet jet_determinant(const JetMatrix& m);

}  // namespace glab
