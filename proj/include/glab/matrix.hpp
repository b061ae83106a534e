#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "glab/scalar.hpp"

namespace glab {

/// Dense row-major matrix over a single exact field.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, Field field);

  static Matrix identity(std::size_t n, Field field);
  static Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows,
                          Field field = Field::rationals());
  /// Rows must share a length; `cols` fixes the width when there are no rows.
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols, Field field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::vector<Scalar> row_vector(std::size_t i) const;

  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  bool is_zero() const;

  /// Throws FieldMismatch unless every entry lies in field().
  void check_field() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<Scalar> data_;
};

/// Rows of `top` followed by rows of `bottom`.
Matrix vstack(const Matrix& top, const Matrix& bottom);

struct Echelon {
  Matrix reduced;                   ///< full rref, zero rows kept at the bottom
  std::vector<std::size_t> pivots;  ///< pivot column per nonzero row
};

Echelon echelon(const Matrix& m);
Matrix rref(const Matrix& m);
/// rref with the zero rows removed; the canonical basis of the row space.
Matrix row_basis(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Rows form the canonical (rref) basis of {x : M x = 0}.
Matrix kernel_basis(const Matrix& m);
Scalar determinant(const Matrix& m);
/// Solves x * basis = v for x, where basis has independent rows; throws if v
/// is not in the row space.
std::vector<Scalar> row_coordinates(const Matrix& basis, std::span<const Scalar> v);

}  // namespace glab
