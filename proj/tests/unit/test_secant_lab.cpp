#include "doctest.h"
#include "test_helpers.hpp"

#include "glab/secant_lab.hpp"

using namespace glab;
using glab::testing::ints;
using glab::testing::kQ;

namespace {

/// Remainder of v modulo the row space of a rref basis.
std::vector<Scalar> reduce_mod(const Matrix& rref_basis, std::vector<Scalar> v) {
  const auto e = echelon(rref_basis);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const Scalar c = v[e.pivots[r]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rref_basis(r, j);
  }
  return v;
}

/// dim S^kX through the tangent space of the Grassmannian, Hom(pi, V/pi): each
/// first-order motion of one parameter coordinate moves two rows; reduce those
/// rows modulo pi and flatten.
std::size_t tangent_route_dim(const LineFamily& f, const std::vector<ParamPoint>& params) {
  const ProjSubspace pi = span_of_lines(f, params);
  if (pi.dim() == static_cast<int>(f.ambient())) return 0;
  const std::size_t k1 = params.size();
  const std::size_t nt = f.param_dim() + 1;
  const std::size_t width = 2 * k1 * (f.ambient() + 1);
  Matrix tangent(0, width, kQ);
  for (std::size_t line = 0; line < k1; ++line) {
    for (std::size_t v = 0; v < nt; ++v) {
      std::vector<Jet> tj;
      for (std::size_t i = 0; i < nt; ++i) tj.push_back(Jet(params[line][i], std::vector<Scalar>{Scalar(i == v, kQ)}));
      const JetMatrix e = f.eval(tj);
      Matrix row(1, width, kQ);
      for (std::size_t r = 0; r < 2; ++r) {
        std::vector<Scalar> d;
        for (std::size_t c = 0; c <= f.ambient(); ++c) d.push_back(e(r, c).infinitesimal(0));
        const auto red = reduce_mod(pi.basis(), d);
        for (std::size_t c = 0; c <= f.ambient(); ++c) row(0, (2 * line + r) * (f.ambient() + 1) + c) = red[c];
      }
      tangent = vstack(tangent, row);
    }
  }
  // The flattened motions live in Hom(rows, V/pi) for this particular row basis;
  // a motion inside pi's row space is invisible, matching the Grassmannian tangent.
  return rank(tangent);
}

std::vector<ParamPoint> pts(std::initializer_list<std::initializer_list<long>> list) {
  std::vector<ParamPoint> out;
  for (auto p : list) out.push_back(ints(p));
  return out;
}

}  // namespace

TEST_CASE("span_of_lines examples") {
  CHECK(span_of_lines(veronese_family(2), pts({{1, 0, 0}, {0, 1, 0}})).dim() == 3);
  Rng rng(1);
  const LineFamily v3 = veronese_family(3);
  CHECK(span_of_lines(v3, {v3.generic_point(rng), v3.generic_point(rng), v3.generic_point(rng)}).dim() == 5);
  const auto t = v3.generic_point(rng);
  CHECK(span_of_lines(v3, {t}) == evaluate_line(v3, t).subspace());
}

TEST_CASE("generic_span_dim examples") {
  Rng rng(2);
  CHECK(generic_span_dim(veronese_family(3), 1, 10, rng) == 3);
  CHECK(generic_span_dim(veronese_family(3), 3, 10, rng) == 7);
  CHECK(generic_span_dim(veronese_family(1), 1, 10, rng) == 3);
}

TEST_CASE("fiber_dimension examples") {
  const LineFamily v2 = veronese_family(2);
  const ProjSubspace pi = span_of_lines(v2, pts({{1, 0, 0}, {0, 1, 0}}));
  CHECK(fiber_dimension(v2, pi, ints({1, 1, 0})) == 1);
  CHECK_THROWS_WITH_AS(fiber_dimension(v2, pi, ints({0, 0, 1})), "witness not in Y_Π", Error);

  Rng rng(3);
  const LineFamily v3 = veronese_family(3);
  const std::vector<ParamPoint> params{v3.generic_point(rng), v3.generic_point(rng), v3.generic_point(rng)};
  const ProjSubspace pi3 = span_of_lines(v3, params);
  auto plane_point = [&] {
    ParamPoint w(4, Scalar::zero(kQ));
    for (const auto& p : params) {
      const Scalar c(rng.between(-9, 9), kQ);
      for (std::size_t j = 0; j < 4; ++j) w[j] += c * p[j];
    }
    return w;
  };
  ParamPoint w = plane_point();
  while (std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); })) w = plane_point();
  CHECK(fiber_dimension(v3, pi3, w) == 2);
  for (int i = 0; i < 10; ++i) {
    const ParamPoint u = plane_point();
    if (std::all_of(u.begin(), u.end(), [](const Scalar& s) { return s.is_zero(); })) continue;
    CHECK(contains(pi3, evaluate_line(v3, u)));
  }

  CHECK(fiber_dimension(v3, ProjSubspace::whole(7, kQ), ints({1, 2, 3, 4})) == 3);
}

TEST_CASE("secant_defect examples") {
  Rng rng(4);
  const auto r21 = secant_defect(veronese_family(2), 1, 5, rng);
  CHECK(r21.delta_k == 1);
  CHECK(r21.r_k == 3);
  CHECK(r21.secant_dim == 2);
  CHECK(r21.rule == WitnessRule::LinearSolve);
  CHECK(r21.formula_holds());
  CHECK(secant_defect_value(veronese_family(4), 3, 5, rng) == 3u);
  const auto r33 = secant_defect(veronese_family(3), 3, 5, rng);
  CHECK(r33.delta_k == 3);
  CHECK(r33.secant_dim == 0);
  CHECK(r33.r_k == 7);
}

TEST_CASE("secant_map_rank examples") {
  Rng rng(5);
  CHECK(secant_map_rank(veronese_family(2), 1, 5, rng) == 2);
  CHECK(secant_map_rank(veronese_family(3), 2, 5, rng) == 3);
  CHECK(secant_map_rank(veronese_family(1), 1, 5, rng) == 0);
}

TEST_CASE("secant_map_rank agrees with the tangent-space route") {
  Rng rng(6);
  for (std::size_t n = 1; n <= 4; ++n) {
    const LineFamily v = veronese_family(n);
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<ParamPoint> params;
      for (std::size_t i = 0; i <= k; ++i) params.push_back(v.generic_point(rng));
      Rng local(100 + n * 10 + k);
      CHECK(secant_map_rank(v, k, 3, local) == tangent_route_dim(v, params));
    }
  }
  // A non-Veronese family: the scroll lines (quadratic entries).
  const LineFamily x = scroll_line_family(1);
  std::vector<ParamPoint> params{x.generic_point(rng), x.generic_point(rng)};
  Rng local(77);
  CHECK(secant_map_rank(x, 1, 3, local) == tangent_route_dim(x, params));
}

TEST_CASE("dimension formula for the Veronese") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::uint64_t seed : {11u, 12u}) {
        Rng rng(seed);
        const auto rep = secant_defect(veronese_family(n), k, 4, rng);
        CHECK(rep.r_k == 2 * k + 1);
        CHECK(rep.delta_k == k);
        CHECK(rep.secant_dim == (k + 1) * (n - k));
        CHECK(rep.formula_holds());
      }
    }
}

TEST_CASE("secant variety of the Veronese has dimension 2n-2") {
  Rng rng(13);
  for (std::size_t n = 1; n <= 4; ++n) {
    const LineFamily v = veronese_family(n);
    const auto proj = projectability_check(v, veronese_projection(n), 50, 20, rng);
    REQUIRE(proj.ok());
    REQUIRE(union_dimension(v, rng).dim == n + 1);
    const std::size_t d = secant_map_rank(v, 1, 5, rng);
    CHECK(d <= 2 * n - 2);
    CHECK(d == 2 * n - 2);
  }
}

TEST_CASE("superadditivity") {
  Rng rng(14);
  const auto a = superadditivity_check(veronese_family(3), 1, 1, 3, rng);
  CHECK(a.delta_sum == 2);
  CHECK(a.holds());
  CHECK(a.equality());
  const auto b = superadditivity_check(veronese_family(4), 1, 2, 3, rng);
  CHECK(b.delta_sum == 3);
  CHECK(b.holds());
  const auto c = superadditivity_check(veronese_family(2), 0, 2, 3, rng);
  CHECK(c.delta_i == 0);
  CHECK(c.delta_sum == c.delta_j);

  // Monotone chain delta_{k+1} >= delta_k + delta_1.
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t k = 1; k < n; ++k) CHECK(superadditivity_check(veronese_family(n), k, 1, 3, rng).holds());

  // The cone of lines through e0 is not in general position.
  PolyMatrix cone(2, 4, 3, kQ);
  cone(0, 0) = MultiPoly::parse("t0", 3, kQ);
  for (std::size_t j = 0; j < 3; ++j) cone(1, 1 + j) = MultiPoly::variable(j, 3, kQ);
  CHECK_THROWS_WITH_AS(superadditivity_check(LineFamily(cone), 1, 1, 3, rng), "hypothesis violated", Error);
}

TEST_CASE("skewness_check") {
  Rng rng(15);
  const auto s2 = skewness_check(veronese_family(2), 1000, rng);
  CHECK(s2.pairs > 990);
  CHECK(s2.fraction() == 1.0);
  CHECK(skewness_check(veronese_family(1), 200, rng).fraction() == 1.0);

  PolyMatrix cone(2, 3, 2, kQ);
  cone(0, 0) = MultiPoly::parse("t0", 2, kQ);
  cone(1, 1) = MultiPoly::parse("t0", 2, kQ);
  cone(1, 2) = MultiPoly::parse("t1", 2, kQ);
  const auto c = skewness_check(LineFamily(cone), 100, rng);
  CHECK(c.pairs > 0);
  CHECK(c.fraction() == 0.0);
}

TEST_CASE("ruling_quadric") {
  Rng rng(16);
  for (int trial = 0; trial < 5; ++trial) {
    const LineFamily v2 = veronese_family(2);
    const auto t = v2.generic_point(rng);
    const auto s = v2.generic_point(rng);
    const auto rep = ruling_quadric(v2, t, s, rng);
    CHECK(rep.status == QuadricReport::Status::Ok);
    CHECK(rep.symmetric_rank == 4);
    CHECK(rep.checked_lines == 8);
    CHECK(rep.lines_on_quadric == rep.checked_lines);
    CHECK(rep.ok());
  }

  // n = 1: pi is all of P^3 and the quadric is x0 x3 - x1 x2 up to scale.
  const LineFamily v1 = veronese_family(1);
  const auto rep = ruling_quadric(v1, ints({1, 2}), ints({3, -1}), rng);
  REQUIRE(rep.ok());
  // Pairs (a <= b): 00 01 02 03 11 12 13 22 23 33.
  const auto expected = ints({0, 0, 0, 1, 0, -1, 0, 0, 0, 0});
  CHECK(rep.coefficients == expected);

  const LineFamily x2 = scroll_line_family(2);
  const auto bad = ruling_quadric(x2, x2.generic_point(rng), x2.generic_point(rng), rng);
  CHECK(bad.status == QuadricReport::Status::NoDefect);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("projectability") {
  Rng rng(17);
  const auto good = projectability_check(veronese_family(2), veronese_projection(2), 1000, 200, rng);
  CHECK(good.pairs_tested == 1000);
  CHECK(good.jet_pairs_tested == 200);
  CHECK(good.violations.empty());
  CHECK(good.law_failures == 0);

  // Sabotage: a center inside the span of two fixed lines.
  const LineFamily v2 = veronese_family(2);
  const auto t = v2.generic_point(rng);
  const auto s = v2.generic_point(rng);
  const Matrix lt = v2.eval(t);
  const Matrix ls = v2.eval(s);
  Matrix c(2, 6, kQ);
  for (std::size_t j = 0; j < 6; ++j) {
    c(0, j) = lt(0, j) + ls(0, j);
    c(1, j) = lt(1, j) - ls(1, j) * Scalar(2, kQ);
  }
  const ProjSubspace center = ProjSubspace::from_rows(c);
  REQUIRE(center.dim() == 1);
  const auto bad = projectability_check(v2, ProjectionMap::from_center(center), 10, 0, rng, {{t, s}});
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().kind == Violation::Kind::Skew);
  CHECK(bad.violations.front().meet_dim == 1);
  CHECK(bad.violations.front().t == t);

  const Field f7 = Field::prime(7);
  const auto ex = projectability_exhaustive(veronese_family(1, f7), veronese_projection(1, f7));
  CHECK(ex.pairs_tested == 8 * 7 / 2);
  CHECK(ex.jet_pairs_tested > 0);
  CHECK(ex.ok());
}

TEST_CASE("ix_tangent_check") {
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto rep = ix_tangent_check(n);
    CHECK(rep.match);
    CHECK(rep.codimension == 2 * n);
    CHECK(rep.labels.size() == 8 * n + n * (n + 2));
    CHECK_FALSE(ix_tangent_check(n, true).match);
  }
  CHECK(ix_tangent_check(2).minors == 12);
  CHECK(ix_tangent_check(3).minors == 56);
  CHECK_THROWS_AS(ix_tangent_check(1), Error);
}

TEST_CASE("Y_pi containment oracle") {
  Rng rng(18);
  for (std::size_t n = 1; n <= 4; ++n) {
    const LineFamily v = veronese_family(n);
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<ParamPoint> params;
      for (std::size_t i = 0; i <= k; ++i) params.push_back(v.generic_point(rng));
      const ProjSubspace pi = span_of_lines(v, params);
      for (int i = 0; i < 100; ++i) {
        ParamPoint u(n + 1, Scalar::zero(kQ));
        for (const auto& p : params) {
          const Scalar c(rng.between(-50, 50), kQ);
          for (std::size_t j = 0; j <= n; ++j) u[j] += c * p[j];
        }
        if (std::all_of(u.begin(), u.end(), [](const Scalar& x) { return x.is_zero(); })) continue;
        CHECK(contains(pi, evaluate_line(v, u)));
      }
    }
  }
}
