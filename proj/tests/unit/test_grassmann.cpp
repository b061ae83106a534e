#include <optional>
#include <set>

#include "doctest.h"
#include "test_helpers.hpp"

#include "glab/grassmann.hpp"

using namespace glab;
using glab::testing::ints;
using glab::testing::kQ;

namespace {

Matrix unit_rows(std::initializer_list<std::size_t> idx, std::size_t ambient, Field f = kQ) {
  Matrix m(idx.size(), ambient + 1, f);
  std::size_t r = 0;
  for (auto i : idx) m(r++, i) = Scalar::one(f);
  return m;
}

Line random_line(Rng& rng, std::size_t ambient, Field f) {
  for (;;) {
    Matrix m = glab::testing::random_matrix(rng, 2, ambient + 1, f, 4);
    if (rank(m) == 2) return Line::from_rows(m);
  }
}

/// Some chart frame containing l other than its rref pivots, if one exists.
std::optional<ChartFrame> other_frame(const Line& l) {
  const ChartFrame base = default_frame(l);
  for (std::size_t a = 0; a <= l.ambient(); ++a)
    for (std::size_t b = 0; b <= l.ambient(); ++b) {
      if (a == b || ChartFrame{a, b} == base) continue;
      const std::size_t cols[] = {a, b};
      if (!determinant(l.basis().select_columns(cols)).is_zero()) return ChartFrame{a, b};
    }
  return std::nullopt;
}

}  // namespace

TEST_CASE("plucker examples") {
  CHECK(plucker(Line::from_rows(unit_rows({0, 1}, 3))).coords() == ints({1, 0, 0, 0, 0, 0}));
  CHECK(plucker(Line::from_rows(Matrix::from_ints({{1, 2, 0}, {0, 1, 2}}))).coords() == ints({1, 2, 4}));
  CHECK(plucker(Line::from_rows(Matrix::from_ints({{1, 2, 0, 0}, {0, 0, 1, 2}}))).coords() ==
        ints({0, 1, 2, 2, 4, 0}));
  CHECK(pair_index(0, 1, 3) == 0);
  CHECK(pair_index(1, 2, 3) == 3);
  CHECK(pair_index(2, 3, 3) == 5);
  CHECK_THROWS_AS(pair_index(2, 2, 3), Error);
}

TEST_CASE("line_from_plucker and relations examples") {
  CHECK(line_from_plucker(3, ints({1, 0, 0, 0, 0, 0})) == Line::from_rows(unit_rows({0, 1}, 3)));
  CHECK(line_from_plucker(3, ints({0, 1, 2, 2, 4, 0})) ==
        Line::from_rows(Matrix::from_ints({{1, 2, 0, 0}, {0, 0, 1, 2}})));
  CHECK_THROWS_WITH_AS(line_from_plucker(3, ints({1, 0, 0, 0, 0, 1})), "not decomposable", Error);
  CHECK_FALSE(plucker_relations_ok(3, ints({1, 0, 0, 0, 0, 1})));

  // p(e0^e1) + p(e2^e3) is the classic indecomposable vector.
  Rng rng(17);
  int skew = 0;
  for (int i = 0; i < 200; ++i) {
    const Line a = random_line(rng, 3, kQ);
    const Line b = random_line(rng, 3, kQ);
    if (line_meets(a, b)) continue;
    ++skew;
    const auto pa = plucker_minors(a.basis());
    const auto pb = plucker_minors(b.basis());
    const Scalar s(rng.between(1, 9), kQ);
    const Scalar t(rng.between(1, 9), kQ);
    std::vector<Scalar> mix;
    for (std::size_t k = 0; k < pa.size(); ++k) mix.push_back(s * pa[k] + t * pb[k]);
    CHECK_FALSE(plucker_relations_ok(3, mix));
  }
  CHECK(skew > 150);
}

TEST_CASE("schubert_form examples") {
  const ProjSubspace p = ProjSubspace::from_rows(unit_rows({0, 1}, 3));
  const SchubertForm form = schubert_form(p);
  CHECK(form.coefficients == ints({0, 0, 0, 0, 0, 1}));
  CHECK(form(plucker(Line::from_rows(unit_rows({2, 3}, 3)))) == Scalar(1, kQ));
  CHECK(form(plucker(Line::from_rows(unit_rows({0, 2}, 3)))).is_zero());
  CHECK(form(plucker(Line(p))).is_zero());
  CHECK_THROWS_AS(schubert_form(ProjSubspace::from_rows(unit_rows({0}, 3))), Error);
}

TEST_CASE("schubert_singular examples") {
  const ProjSubspace p = ProjSubspace::from_rows(unit_rows({0, 1}, 3));
  CHECK(schubert_singular(p, Line(p)));
  const Line meets_once = Line::from_rows(unit_rows({0, 2}, 3));
  CHECK_FALSE(schubert_singular(p, meets_once));
  const auto grad = schubert_gradient(schubert_form(p), meets_once, default_frame(meets_once));
  CHECK(std::any_of(grad.begin(), grad.end(), [](const Scalar& s) { return !s.is_zero(); }));
  CHECK_THROWS_WITH_AS(schubert_singular(p, Line::from_rows(unit_rows({2, 3}, 3))), "not on H_Π", Error);
}

TEST_CASE("chart examples") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t big = 2 * n + 1;
    const Line l1 = Line::from_rows(unit_rows({0, 1}, big));
    const ChartPoint c = chart_coords(l1, {0, 1});
    CHECK(c.coords.is_zero());
    CHECK(c.coords.rows() == 2);
    CHECK(c.coords.cols() == big - 1);
    CHECK(chart_line(ChartPoint{{0, 1}, Matrix(2, big - 1, kQ)}) == l1);
  }
  CHECK_THROWS_WITH_AS(chart_coords(Line::from_rows(unit_rows({0, 2}, 3)), {0, 1}), "outside chart", Error);

  // Veronese n=1 line at (1:eps): rows [[1, eps, 0, 0], [0, 0, 1, eps]] in the frame (0, 2).
  JetMatrix m(2, 4, kQ, 1);
  m(0, 0) = Jet(Scalar::one(kQ), 1);
  m(0, 1) = Jet::variable(Scalar::zero(kQ), 0, 1);
  m(1, 2) = Jet(Scalar::one(kQ), 1);
  m(1, 3) = Jet::variable(Scalar::zero(kQ), 0, 1);
  const auto coords = chart_coords(m, {0, 2});
  REQUIRE(coords.size() == 4);
  // Free columns are {1, 3}: row 0 = (eps, 0), row 1 = (0, eps).
  CHECK(coords[0].value().is_zero());
  CHECK(coords[0].infinitesimal(0) == Scalar::one(kQ));
  CHECK(coords[1].is_zero());
  CHECK(coords[2].is_zero());
  CHECK(coords[3].infinitesimal(0) == Scalar::one(kQ));

  // A scaled first row must still normalize to the same jet coordinates.
  for (std::size_t j = 0; j < 4; ++j) m(0, j) = m(0, j) * Scalar(3, kQ);
  CHECK(chart_coords(m, {0, 2}) == coords);
}

TEST_CASE("plucker round trip and basis independence") {
  Rng rng(99);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const Field f = trial % 3 == 0 ? Field::prime(1000003) : kQ;
    const Line l = random_line(rng, n, f);
    const PluckerVector v = plucker(l);
    CHECK(plucker_relations_ok(v));
    CHECK(line_from_plucker(v) == l);

    Matrix g(2, 2, f);
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g(i, j) = Scalar(rng.between(-3, 3), f);
    } while (determinant(g).is_zero());
    CHECK(PluckerVector(n, plucker_minors(g * l.basis())) == v);
  }
}

TEST_CASE("chart round trip") {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const Line l = random_line(rng, n, kQ);
    const ChartFrame frame = default_frame(l);
    const ChartPoint c = chart_coords(l, frame);
    CHECK(chart_line(c) == l);
    const ChartPoint back = chart_coords(chart_line(c), frame);
    CHECK(back.coords == c.coords);
  }
}

TEST_CASE("schubert form vanishes exactly on meeting lines") {
  Rng rng(2024);
  int meeting = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 3 : 5;
    const Matrix pb = glab::testing::random_matrix(rng, n - 1, n + 1, kQ, 3);
    if (rank(pb) != n - 1) continue;
    const ProjSubspace p = ProjSubspace::from_rows(pb);
    Line l = random_line(rng, n, kQ);
    if (trial % 3 == 0) {
      // Force a shared point by replacing one spanning row with a point of P.
      Matrix rows = l.basis();
      const auto pt = glab::testing::random_matrix(rng, 1, n - 1, kQ, 3) * p.basis();
      for (std::size_t j = 0; j <= n; ++j) rows(0, j) = pt(0, j);
      if (rank(rows) != 2) continue;
      l = Line::from_rows(rows);
    }
    const bool on = schubert_form(p)(plucker(l)).is_zero();
    CHECK(on == line_meets(l, p));
    meeting += on;
  }
  CHECK(meeting > 2000);
}

TEST_CASE("singular locus is containment: exhaustive over G(1,3)(F_3)") {
  const Field f = Field::prime(3);
  const auto points = projective_points(3, f);
  REQUIRE(points.size() == 40);
  std::vector<Line> lines;
  std::set<std::string> seen;
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      Matrix m(2, 4, f);
      for (std::size_t j = 0; j < 4; ++j) {
        m(0, j) = points[a][j];
        m(1, j) = points[b][j];
      }
      const Line l = Line::from_rows(m);
      if (seen.insert(l.basis().to_string()).second) lines.push_back(l);
    }
  REQUIRE(lines.size() == 130);

  std::size_t on_divisor = 0;
  std::size_t singular = 0;
  std::size_t second_charts = 0;
  for (const Line& p : lines) {
    const SchubertForm form = schubert_form(p);
    for (const Line& l : lines) {
      if (!form(plucker(l)).is_zero()) continue;
      ++on_divisor;
      const bool sing = schubert_singular(p, l);
      CHECK(sing == contains(p, l));
      singular += sing;
      if (auto other = other_frame(l)) {
        ++second_charts;
        CHECK(schubert_singular(p, l, *other) == sing);
      }
    }
  }
  // A line over F_3 has 4 points, each on 12 further lines.
  CHECK(on_divisor == 130 * (1 + 4 * 12));
  CHECK(singular == 130);
  CHECK(second_charts == on_divisor);
}

TEST_CASE("singular locus is containment: random cases in P^5") {
  Rng rng(55);
  const std::size_t n = 5;
  for (int trial = 0; trial < 1000; ++trial) {
    Matrix pb = glab::testing::random_matrix(rng, 4, 6, kQ, 3);
    if (rank(pb) != 4) continue;
    const ProjSubspace p = ProjSubspace::from_rows(pb);
    Matrix rows(2, n + 1, kQ);
    const int kind = trial % 3;  // 0: inside P, 1: one shared point, 2: generic meeting
    const Matrix inside = glab::testing::random_matrix(rng, 2, 4, kQ, 3) * p.basis();
    const Matrix outside = glab::testing::random_matrix(rng, 1, n + 1, kQ, 3);
    for (std::size_t j = 0; j <= n; ++j) {
      rows(0, j) = inside(0, j);
      rows(1, j) = kind == 0 ? inside(1, j) : outside(0, j);
    }
    if (rank(rows) != 2) continue;
    const Line l = Line::from_rows(rows);
    REQUIRE(schubert_form(p)(plucker(l)).is_zero());
    CHECK(schubert_singular(p, l) == contains(p, l));
    if (kind == 0) CHECK(schubert_singular(p, l));
    if (auto other = other_frame(l)) CHECK(schubert_singular(p, l, *other) == schubert_singular(p, l));
  }
}
