#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "glab/jet.hpp"
#include "glab/proj_space.hpp"

namespace glab {

/// Number of Plücker coordinates of a line in P^N.
std::size_t plucker_length(std::size_t ambient);
/// Position of p_{ij} (i < j) in lexicographic pair order.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t ambient);
std::vector<std::pair<std::size_t, std::size_t>> pair_list(std::size_t ambient);

/// Plücker coordinates of a line, scaled so the first nonzero entry is 1.
class PluckerVector {
 public:
  /// Normalizes; throws if all coordinates vanish.
  PluckerVector(std::size_t ambient, std::vector<Scalar> coords);

  std::size_t ambient() const { return ambient_; }
  Field field() const { return coords_.front().field(); }
  const std::vector<Scalar>& coords() const { return coords_; }
  /// p_{ij} with p_{ji} = -p_{ij} and p_{ii} = 0.
  Scalar at(std::size_t i, std::size_t j) const;

  friend bool operator==(const PluckerVector& a, const PluckerVector& b) = default;

 private:
  std::size_t ambient_;
  std::vector<Scalar> coords_;
};

/// Unnormalized 2x2 minors of a 2 x (N+1) matrix, lexicographic pairs.
std::vector<Scalar> plucker_minors(const Matrix& two_rows);
std::vector<Jet> plucker_minors(const JetMatrix& two_rows);

PluckerVector plucker(const Line& l);
/// All three-term relations p_ij p_kl - p_ik p_jl + p_il p_jk = 0 for i<j<k<l.
bool plucker_relations_ok(std::size_t ambient, std::span<const Scalar> coords);
inline bool plucker_relations_ok(const PluckerVector& v) { return plucker_relations_ok(v.ambient(), v.coords()); }
/// Inverse of plucker(); throws "not decomposable" when the relations fail.
Line line_from_plucker(std::size_t ambient, std::span<const Scalar> coords);
inline Line line_from_plucker(const PluckerVector& v) { return line_from_plucker(v.ambient(), v.coords()); }

/// Matrix of the map induced on Plücker coordinates by a linear map P^N -> P^M.
Matrix exterior_square(const Matrix& m);

/// Linear form on Plücker space cutting out the lines that meet a codim-2 subspace.
struct SchubertForm {
  ProjSubspace center;
  std::vector<Scalar> coefficients;  ///< indexed like plucker coordinates

  Scalar operator()(std::span<const Scalar> plucker_coords) const;
  Scalar operator()(const PluckerVector& v) const { return (*this)(v.coords()); }
};

SchubertForm schubert_form(const ProjSubspace& p);

/// Pivot columns of the affine chart: row 0 carries 1 at `first`, row 1 at `second`.
struct ChartFrame {
  std::size_t first;
  std::size_t second;
  friend bool operator==(const ChartFrame&, const ChartFrame&) = default;
};

/// Affine chart coordinates: the 2 x (N-1) block off the frame columns (ascending order).
struct ChartPoint {
  ChartFrame frame;
  Matrix coords;

  std::size_t ambient() const { return coords.cols() + 1; }
};

/// Columns of P^N not in the frame, ascending.
std::vector<std::size_t> chart_free_columns(const ChartFrame& frame, std::size_t ambient);
/// Pivot columns of the line's rref basis; the line always lies in this chart.
ChartFrame default_frame(const Line& l);
ChartPoint chart_coords(const Line& l, const ChartFrame& frame);
Line chart_line(const ChartPoint& c);
/// 2 x (N+1) matrix with identity block on the frame columns.
Matrix chart_matrix(const ChartPoint& c);
/// Chart coordinates of a jet-valued line, row-major 2 x (N-1).
std::vector<Jet> chart_coords(const JetMatrix& two_rows, const ChartFrame& frame);

/// Gradient of the Schubert form along the Grassmannian, in the given chart at l.
std::vector<Scalar> schubert_gradient(const SchubertForm& form, const Line& l, const ChartFrame& frame);
/// True iff l is a singular point of the Schubert divisor of p; requires l on the divisor.
bool schubert_singular(const ProjSubspace& p, const Line& l);
bool schubert_singular(const ProjSubspace& p, const Line& l, const ChartFrame& frame);

}  // namespace glab
