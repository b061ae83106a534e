#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glab/jet.hpp"
#include "glab/matrix.hpp"

namespace glab {

using Exponent = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponent& e);

/// Graded lexicographic order, larger monomials first.
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// All exponents of total degree d in `nvars` variables, grlex descending.
std::vector<Exponent> monomials_of_degree(std::size_t nvars, std::uint32_t d);

/// Sparse multivariate polynomial in t0..t{n-1}; zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Scalar, GrlexDescending>;

  MultiPoly(std::size_t nvars, Field field) : nvars_(nvars), field_(field) {}

  static MultiPoly constant(const Scalar& c, std::size_t nvars);
  static MultiPoly variable(std::size_t index, std::size_t nvars, Field field);
  static MultiPoly monomial(const Exponent& e, const Scalar& c);
  /// Grammar: terms joined by '+'/'-', each term "c*t0^a*t1^b" with optional
  /// rational coefficient c and optional exponents.
  static MultiPoly parse(std::string_view text, std::size_t nvars, Field field);

  std::size_t num_vars() const { return nvars_; }
  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  /// The zero polynomial counts as homogeneous of every degree.
  bool is_homogeneous() const;
  Scalar coefficient(const Exponent& e) const;

  MultiPoly derivative(std::size_t var) const;

  Scalar eval(std::span<const Scalar> point) const;
  Jet eval(std::span<const Jet> point) const;
  /// Substitutes a polynomial for each variable.
  MultiPoly compose(std::span<const MultiPoly> substitution) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Scalar& s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Scalar& s) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;

 private:
  void require_compatible(const MultiPoly& o) const;
  void add_term(const Exponent& e, const Scalar& c);

  std::size_t nvars_;
  Field field_;
  Terms terms_;
};

/// Matrix of polynomials in a shared variable set.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars, Field field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_vars() const { return nvars_; }
  Field field() const { return field_; }

  MultiPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix eval(std::span<const Scalar> point) const;
  JetMatrix eval(std::span<const Jet> point) const;
  /// Largest entry degree (-1 if all entries are zero).
  int max_degree() const;
  /// Common degree of a row's nonzero entries; throws if the row is not homogeneous of one degree.
  int row_degree(std::size_t i) const;

  /// this * m for a constant matrix m.
  PolyMatrix multiply_right(const Matrix& m) const;
  PolyMatrix transpose() const;
  bool is_zero() const;
  /// All maximal minors (rows x rows), column subsets in lexicographic order.
  std::vector<MultiPoly> maximal_minors() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t nvars_;
  Field field_;
  std::vector<MultiPoly> data_;
};

/// Entry (i, j) = dF_i/dt_j at `point`, from one multi-direction jet evaluation.
Matrix jacobian_at(std::span<const MultiPoly> polys, std::span<const Scalar> point);
/// Same matrix from symbolic derivatives; kept as an independent route.
Matrix jacobian_symbolic(std::span<const MultiPoly> polys, std::span<const Scalar> point);
/// Rank of the coefficient matrix of homogeneous degree-d polynomials in the grlex monomial basis.
std::size_t coefficient_rank(std::span<const MultiPoly> polys, std::uint32_t degree);
/// The jet point (point + eps_j in coordinate j).
std::vector<Jet> jet_point(std::span<const Scalar> point);
/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

}  // namespace glab
