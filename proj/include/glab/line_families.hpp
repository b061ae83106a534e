#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "glab/grassmann.hpp"
#include "glab/multipoly.hpp"
#include "glab/random.hpp"

namespace glab {

/// Family of d-planes in P^N parametrized by P^n: a (d+1) x (N+1) polynomial
/// matrix in t0..tn whose rows are homogeneous.
class PlaneFamily {
 public:
  explicit PlaneFamily(PolyMatrix m);

  const PolyMatrix& matrix() const { return m_; }
  std::size_t param_dim() const { return m_.num_vars() - 1; }
  std::size_t ambient() const { return m_.cols() - 1; }
  std::size_t plane_dim() const { return m_.rows() - 1; }
  Field field() const { return m_.field(); }
  /// Largest row degree.
  int degree() const;

  Matrix eval(std::span<const Scalar> t) const { return m_.eval(t); }
  JetMatrix eval(std::span<const Jet> t) const { return m_.eval(t); }
  /// Throws on a zero parameter vector or a rank-deficient evaluation.
  ProjSubspace subspace_at(std::span<const Scalar> t) const;
  /// Random parameter point where the evaluation has full row rank.
  std::vector<Scalar> generic_point(Rng& rng) const;

 private:
  PolyMatrix m_;
};

/// A plane family with two rows.
class LineFamily : public PlaneFamily {
 public:
  explicit LineFamily(PolyMatrix m);
};

Line evaluate_line(const LineFamily& f, std::span<const Scalar> t);

/// Linear projection P^N -> P^M given by a full-row-rank (M+1) x (N+1) matrix.
class ProjectionMap {
 public:
  static ProjectionMap from_matrix(Matrix m);
  /// Projection whose kernel is `center`: rows are the center's equations.
  static ProjectionMap from_center(const ProjSubspace& center);

  const Matrix& matrix() const { return m_; }
  const ProjSubspace& center() const { return center_; }
  std::size_t source_ambient() const { return m_.cols() - 1; }
  std::size_t target_ambient() const { return m_.rows() - 1; }

 private:
  ProjectionMap(Matrix m, ProjSubspace center) : m_(std::move(m)), center_(std::move(center)) {}

  Matrix m_;
  ProjSubspace center_;
};

LineFamily veronese_family(std::size_t n, Field f = Field::rationals());
/// (x0 : x1+x_{n+1} : ... : xn+x_{2n} : x_{2n+1}).
ProjectionMap veronese_projection(std::size_t n, Field f = Field::rationals());
/// Image family; throws "projection undefined on family" when a generic line meets the center.
LineFamily apply_projection(const ProjectionMap& p, const LineFamily& f);

struct DoubleVeroneseReport {
  std::size_t n = 0;
  std::size_t minor_rank = 0;
  std::size_t expected_rank = 0;
  bool injective = true;
  std::size_t exhaustive_points = 0;  ///< points of P^n(F_5) compared, 0 if skipped
  std::size_t random_pairs = 0;
  bool immersive = true;
  std::size_t immersion_points = 0;
  std::size_t min_differential_rank = 0;

  bool pass() const { return minor_rank == expected_rank && injective && immersive; }
};

/// Checks that the Plücker image of the projected Veronese is the double Veronese embedding.
/// The exhaustive injectivity pass always runs over F_5 (n <= 2); the rest uses `field`.
DoubleVeroneseReport double_veronese_check(std::size_t n, Rng& rng, std::size_t random_pairs = 1000,
                                           std::size_t immersion_points = 100, Field field = Field::rationals());

/// Fibers of the scroll: r lines (s, u) in 2-blocks and one conic (s^2, su, u^2).
PlaneFamily scroll_fiber_family(std::size_t r, Field f = Field::rationals());
/// Kernel rows of the fiber matrix at each (s:u).
PlaneFamily scroll_dual_family(std::size_t r, Field f = Field::rationals());

struct ScrollLift {
  PlaneFamily family;     ///< (r+2) x (2r+4), row i carries (u, -s) in block i
  ProjectionMap projection;  ///< merges the last two blocks: (y1,y2,y3,y4) -> (y1, y2+y3, y4)
};
ScrollLift scroll_lift(std::size_t r, Field f = Field::rationals());

/// Lines inside the dual (r+1)-spaces, in an affine chart of G(1, r+1) times P^1.
///
/// Variables (s, u, a_2..a_{r+1}, b_2..b_{r+1}); the line is spanned by
/// (s, 0, a) D(s,u) and (0, s, b) D(s,u), where D is the dual matrix. Every
/// entry is a quadratic form, so the parameter space is P^{2r+1}.
LineFamily scroll_line_family(std::size_t r, Field f = Field::rationals());

struct UnionDimension {
  std::size_t dim = 0;
  std::size_t cap = 0;  ///< min(N, n + d): the largest value the union can have
  bool exact = false;   ///< dim reached the cap, so the lower bound is the true value
};

/// Dimension of the union of the family's planes, as max Jacobian rank - 1 of
/// (t, mu) -> sum_i mu_i row_i(t) over `samples` random points.
UnionDimension union_dimension(const PlaneFamily& f, Rng& rng, std::size_t samples = 20);

nlohmann::json family_to_json(const PlaneFamily& f);
/// Reads {ambient, param_dim, degree, rows: [[poly strings]]}.
PlaneFamily family_from_json(const nlohmann::json& j, Field f = Field::rationals());

}  // namespace glab
