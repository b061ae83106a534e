#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glab/line_families.hpp"

namespace glab {

using ParamPoint = std::vector<Scalar>;

/// Span of the lines of F at the given parameter points.
ProjSubspace span_of_lines(const LineFamily& f, const std::vector<ParamPoint>& params);
/// r_k: largest span dimension of k+1 lines over `trials` random tuples.
std::size_t generic_span_dim(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng);

/// Polynomials in t whose common zeros (with a genuine line) are the lines of F inside pi:
/// each equation of pi applied to each row of F.
std::vector<MultiPoly> containment_equations(const LineFamily& f, const ProjSubspace& pi);
/// Local dimension of Y_pi at the witness: n - rank of the containment Jacobian.
std::size_t fiber_dimension(const LineFamily& f, const ProjSubspace& pi, std::span<const Scalar> witness);

/// How a witness of Y_pi was produced.
enum class WitnessRule {
  LinearSolve,     ///< entries linear in t: random solution of the linear containment system
  GeneratingLine,  ///< otherwise: one of the lines spanning pi
};
std::string to_string(WitnessRule r);

/// A random point of Y_pi from the linear containment system, when F is linear in t.
std::optional<ParamPoint> linear_witness(const LineFamily& f, const ProjSubspace& pi, Rng& rng);

struct SecantReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t r_k = 0;
  std::size_t delta_k = 0;
  std::size_t secant_dim = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string field;
  WitnessRule rule = WitnessRule::LinearSolve;
  bool witness_failure = false;

  /// dim S^kX = (k+1)(n - delta_k).
  bool formula_holds() const { return !witness_failure && secant_dim == (k + 1) * (n - delta_k); }
};

/// delta_k alone: max fiber dimension over witnesses of `trials` random spans.
std::optional<std::size_t> secant_defect_value(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng,
                                               WitnessRule* rule_used = nullptr);
/// Full report with the span dimension, the defect and dim S^kX.
SecantReport secant_defect(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng);
/// dim S^kX as max Jacobian rank - 1 of the map from k+1 parameter points to the
/// maximal minors of the stacked (2k+2) x (N+1) matrix; 0 when the span is all of P^N.
std::size_t secant_map_rank(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng);

struct SuperadditivityResult {
  std::size_t i = 0, j = 0;
  std::size_t delta_i = 0, delta_j = 0, delta_sum = 0;
  bool holds() const { return delta_sum >= delta_i + delta_j; }
  bool equality() const { return delta_sum == delta_i + delta_j; }
};
/// Requires general position up to i+j; throws "hypothesis violated" otherwise.
SuperadditivityResult superadditivity_check(const LineFamily& f, std::size_t i, std::size_t j, std::size_t trials,
                                            Rng& rng);

struct SkewnessResult {
  std::size_t pairs = 0;
  std::size_t skew = 0;
  double fraction() const { return pairs == 0 ? 0.0 : static_cast<double>(skew) / static_cast<double>(pairs); }
};
/// Pairs of distinct lines whose span is a 3-space.
SkewnessResult skewness_check(const LineFamily& f, std::size_t trials, Rng& rng);

struct QuadricReport {
  enum class Status { Ok, NotSkew, NoDefect, NoWitnessRule, NotOnQuadric, NotUnique };
  Status status = Status::Ok;
  ProjSubspace pi = ProjSubspace::empty(0, Field::rationals());
  /// Coefficients of x_a x_b (a <= b) in pi's own coordinates, lexicographic pairs.
  std::vector<Scalar> coefficients;
  Matrix symmetric{0, 0, Field::rationals()};
  std::size_t symmetric_rank = 0;
  std::size_t fitted_lines = 0;
  std::size_t checked_lines = 0;
  std::size_t lines_on_quadric = 0;

  bool ok() const { return status == Status::Ok && symmetric_rank == 4 && lines_on_quadric == checked_lines; }
};
std::string to_string(QuadricReport::Status s);

/// Fits the quadric through lines of Y_pi, pi = span(L_t, L_s).
QuadricReport ruling_quadric(const LineFamily& f, std::span<const Scalar> t, std::span<const Scalar> s, Rng& rng,
                             std::size_t lines = 8);

struct Violation {
  enum class Kind { Skew, Coplanar };  ///< bad meet with a 3-space span, or with a plane span
  Kind kind;
  bool jet;                ///< first-order pair (t, direction) rather than (t, s)
  ParamPoint t;
  ParamPoint other;        ///< s, or the tangent direction for jet pairs
  int meet_dim;
};
std::string to_string(Violation::Kind k);

struct ProjectabilityReport {
  ProjSubspace center = ProjSubspace::empty(0, Field::rationals());
  std::size_t pairs_tested = 0;
  std::size_t jet_pairs_tested = 0;
  std::size_t skew_spans = 0;
  std::size_t plane_spans = 0;
  std::size_t law_failures = 0;  ///< span/meet results violating the modular dimension law
  std::vector<Violation> violations;

  bool ok() const { return violations.empty() && law_failures == 0; }
};

/// Meet conditions between the center of p and the spans of random pairs,
/// first-order pairs, and any caller-supplied pairs.
ProjectabilityReport projectability_check(const LineFamily& f, const ProjectionMap& p, std::size_t trials,
                                          std::size_t jet_trials, Rng& rng,
                                          const std::vector<std::pair<ParamPoint, ParamPoint>>& extra_pairs = {});
/// Every pair and every first-order pair over a small prime field.
ProjectabilityReport projectability_exhaustive(const LineFamily& f, const ProjectionMap& p);

struct IncidenceTangentReport {
  std::size_t n = 0;
  std::vector<std::string> labels;  ///< tangent coordinates a_ij, b_ij, x_ij in column order
  Matrix kernel{0, 0, Field::rationals()};
  Matrix expected{0, 0, Field::rationals()};
  std::size_t minors = 0;
  std::size_t codimension = 0;
  bool match = false;
};

/// Tangent space at the origin of the incidence variety, from the linear parts of
/// all maximal minors of the two (n+3) x (2n+2) chart matrices. With `mutate`,
/// the first expected equation becomes x_0j = 2 b_0j.
IncidenceTangentReport ix_tangent_check(std::size_t n, bool mutate = false);

}  // namespace glab
