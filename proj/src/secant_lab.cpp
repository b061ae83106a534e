#include "glab/secant_lab.hpp"

#include <algorithm>

namespace glab {
namespace {

constexpr int kMaxResamples = 100;

bool proportional(std::span<const Scalar> a, std::span<const Scalar> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

Matrix stacked_eval(const LineFamily& f, const std::vector<ParamPoint>& params) {
  Matrix m(0, f.ambient() + 1, f.field());
  for (const auto& t : params) m = vstack(m, f.eval(t));
  return m;
}

std::vector<ParamPoint> generic_tuple(const LineFamily& f, std::size_t count, Rng& rng) {
  std::vector<ParamPoint> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(f.generic_point(rng));
  return out;
}

/// k+1 random lines spanning a (2k+1)-space (or the whole ambient when that is smaller).
std::vector<ParamPoint> general_tuple(const LineFamily& f, std::size_t k, Rng& rng) {
  const std::size_t want = std::min(2 * k + 2, f.ambient() + 1);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    auto params = generic_tuple(f, k + 1, rng);
    if (rank(stacked_eval(f, params)) == want) return params;
  }
  throw Error("hypothesis violated: " + std::to_string(k + 1) + " general lines do not span a " +
              std::to_string(want - 1) + "-space");
}

Matrix column(std::span<const Scalar> v, Field f) {
  Matrix m(v.size(), 1, f);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

std::vector<Scalar> row_of(const Matrix& m, std::size_t i) {
  const auto r = m.row(i);
  return {r.begin(), r.end()};
}

}  // namespace

ProjSubspace span_of_lines(const LineFamily& f, const std::vector<ParamPoint>& params) {
  if (params.empty()) throw Error("need at least one line");
  ProjSubspace acc = ProjSubspace::empty(f.ambient(), f.field());
  for (const auto& t : params) acc = span(acc, evaluate_line(f, t));
  return acc;
}

std::size_t generic_span_dim(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const int d = span_of_lines(f, generic_tuple(f, k + 1, rng)).dim();
    best = std::max(best, static_cast<std::size_t>(d));
  }
  return best;
}

std::vector<MultiPoly> containment_equations(const LineFamily& f, const ProjSubspace& pi) {
  if (pi.ambient() != f.ambient()) throw Error("ambient mismatch");
  const Matrix& eq = pi.equations();
  const PolyMatrix& m = f.matrix();
  std::vector<MultiPoly> out;
  for (std::size_t e = 0; e < eq.rows(); ++e)
    for (std::size_t r = 0; r < m.rows(); ++r) {
      MultiPoly p(m.num_vars(), f.field());
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!eq(e, c).is_zero() && !m(r, c).is_zero()) p += m(r, c) * eq(e, c);
      out.push_back(std::move(p));
    }
  return out;
}

std::size_t fiber_dimension(const LineFamily& f, const ProjSubspace& pi, std::span<const Scalar> witness) {
  const auto eqs = containment_equations(f, pi);
  const bool genuine = rank(f.eval(witness)) == 2;
  if (!genuine || std::any_of(eqs.begin(), eqs.end(), [&](const MultiPoly& p) { return !p.eval(witness).is_zero(); })) {
    throw Error("witness not in Y_Π");
  }
  if (eqs.empty()) return f.param_dim();
  return f.param_dim() - rank(jacobian_at(eqs, witness));
}

std::string to_string(WitnessRule r) { return r == WitnessRule::LinearSolve ? "linear-solve" : "generating-line"; }

std::optional<ParamPoint> linear_witness(const LineFamily& f, const ProjSubspace& pi, Rng& rng) {
  if (f.degree() != 1) return std::nullopt;
  const auto eqs = containment_equations(f, pi);
  const std::size_t nvars = f.matrix().num_vars();
  Matrix a(eqs.size(), nvars, f.field());
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t j = 0; j < nvars; ++j) {
      Exponent e(nvars, 0);
      e[j] = 1;
      a(i, j) = eqs[i].coefficient(e);
    }
  const Matrix k = kernel_basis(a);
  if (k.rows() == 0) return std::nullopt;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    const auto c = rng.point(k.rows(), f.field());
    ParamPoint t(nvars, Scalar::zero(f.field()));
    for (std::size_t r = 0; r < k.rows(); ++r)
      for (std::size_t j = 0; j < nvars; ++j) t[j] += c[r] * k(r, j);
    if (rank(f.eval(t)) == 2) return t;
  }
  return std::nullopt;
}

std::optional<std::size_t> secant_defect_value(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng,
                                               WitnessRule* rule_used) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto params = general_tuple(f, k, rng);
    const ProjSubspace pi = span_of_lines(f, params);
    ParamPoint w;
    if (auto lw = linear_witness(f, pi, rng)) {
      w = std::move(*lw);
      if (rule_used) *rule_used = WitnessRule::LinearSolve;
    } else {
      w = params.front();
      if (rule_used) *rule_used = WitnessRule::GeneratingLine;
    }
    const std::size_t d = fiber_dimension(f, pi, w);
    best = std::max(best.value_or(0), d);
  }
  return best;
}

SecantReport secant_defect(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng) {
  if (k > f.param_dim()) throw Error("k must not exceed the parameter dimension");
  SecantReport rep;
  rep.k = k;
  rep.n = f.param_dim();
  rep.trials = trials;
  rep.seed = rng.seed();
  rep.field = f.field().name();
  rep.r_k = generic_span_dim(f, k, trials, rng);
  const auto delta = secant_defect_value(f, k, trials, rng, &rep.rule);
  rep.witness_failure = !delta.has_value();
  rep.delta_k = delta.value_or(0);
  rep.secant_dim = secant_map_rank(f, k, trials, rng);
  return rep;
}

std::size_t secant_map_rank(const LineFamily& f, std::size_t k, std::size_t trials, Rng& rng) {
  const std::size_t rows = 2 * k + 2;
  const std::size_t cols = f.ambient() + 1;
  if (rows >= cols) {
    // k+1 general lines already fill P^N whenever the family is in general position.
    const auto params = general_tuple(f, k, rng);
    if (rank(stacked_eval(f, params)) == cols) return 0;
  }
  const std::size_t nt = f.param_dim() + 1;
  const std::size_t dirs = (k + 1) * nt;
  const Field field = f.field();
  std::size_t best = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto params = general_tuple(f, k, rng);
    const Echelon ech = echelon(stacked_eval(f, params));
    if (ech.pivots.size() == cols) return 0;
    // Near the pivot minor, every Plucker coordinate is a polynomial in the
    // minors that swap at most one pivot column, divided by a power of the
    // pivot minor. Those minors therefore carry the full differential rank.
    std::vector<std::vector<std::size_t>> subsets{ech.pivots};
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) {
        if (std::find(ech.pivots.begin(), ech.pivots.end(), b) != ech.pivots.end()) continue;
        auto s = ech.pivots;
        s[a] = b;
        std::sort(s.begin(), s.end());
        subsets.push_back(std::move(s));
      }
    JetMatrix m(rows, cols, field, dirs);
    for (std::size_t line = 0; line <= k; ++line) {
      std::vector<Jet> tj;
      for (std::size_t v = 0; v < nt; ++v) tj.push_back(Jet::variable(params[line][v], line * nt + v, dirs));
      const JetMatrix e = f.eval(tj);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(2 * line + r, c) = e(r, c);
    }
    Matrix jac(subsets.size(), dirs, field);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      const Jet d = jet_determinant(m.select_columns(subsets[s]));
      for (std::size_t v = 0; v < dirs; ++v) jac(s, v) = d.infinitesimal(v);
    }
    best = std::max(best, rank(jac));
  }
  return best == 0 ? 0 : best - 1;
}

SuperadditivityResult superadditivity_check(const LineFamily& f, std::size_t i, std::size_t j, std::size_t trials,
                                            Rng& rng) {
  if (i + j > f.param_dim()) throw Error("i + j must not exceed the parameter dimension");
  for (std::size_t k = 0; k <= i + j; ++k) {
    if (generic_span_dim(f, k, trials, rng) != 2 * k + 1) throw Error("hypothesis violated");
  }
  auto delta = [&](std::size_t k) {
    const auto d = secant_defect_value(f, k, trials, rng);
    if (!d) throw Error("no witness for the secant defect");
    return *d;
  };
  SuperadditivityResult out;
  out.i = i;
  out.j = j;
  out.delta_i = delta(i);
  out.delta_j = delta(j);
  out.delta_sum = delta(i + j);
  return out;
}

SkewnessResult skewness_check(const LineFamily& f, std::size_t trials, Rng& rng) {
  SkewnessResult out;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto t = f.generic_point(rng);
    const auto s = f.generic_point(rng);
    if (proportional(t, s)) continue;
    ++out.pairs;
    if (span(evaluate_line(f, t), evaluate_line(f, s)).dim() == 3) ++out.skew;
  }
  return out;
}

std::string to_string(QuadricReport::Status s) {
  switch (s) {
    case QuadricReport::Status::Ok: return "ok";
    case QuadricReport::Status::NotSkew: return "lines not skew";
    case QuadricReport::Status::NoDefect: return "precondition failure: delta_1 = 0";
    case QuadricReport::Status::NoWitnessRule: return "no witness rule";
    case QuadricReport::Status::NotOnQuadric: return "not on a quadric";
    case QuadricReport::Status::NotUnique: return "quadric not unique";
  }
  return "unknown";
}

QuadricReport ruling_quadric(const LineFamily& f, std::span<const Scalar> t, std::span<const Scalar> s, Rng& rng,
                             std::size_t lines) {
  QuadricReport rep;
  const Field field = f.field();
  const Line lt = evaluate_line(f, t);
  const Line ls = evaluate_line(f, s);
  rep.pi = span(lt, ls);
  if (rep.pi.dim() != 3) {
    rep.status = QuadricReport::Status::NotSkew;
    return rep;
  }
  if (fiber_dimension(f, rep.pi, t) == 0) {
    rep.status = QuadricReport::Status::NoDefect;
    return rep;
  }
  const Matrix& basis = rep.pi.basis();

  // Three points of each line in pi's coordinates.
  auto line_points = [&](const Line& l) {
    const auto p = row_coordinates(basis, row_of(l.basis(), 0));
    const auto q = row_coordinates(basis, row_of(l.basis(), 1));
    std::vector<Scalar> sum;
    for (std::size_t i = 0; i < 4; ++i) sum.push_back(p[i] + q[i]);
    return std::vector<std::vector<Scalar>>{p, q, sum};
  };
  auto sample_lines = [&](std::size_t count) -> std::optional<std::vector<Line>> {
    std::vector<Line> out;
    for (std::size_t i = 0; i < count; ++i) {
      auto w = linear_witness(f, rep.pi, rng);
      if (!w) return std::nullopt;
      out.push_back(evaluate_line(f, *w));
    }
    return out;
  };
  auto quadric_row = [&](const std::vector<Scalar>& x) {
    std::vector<Scalar> out;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b) out.push_back(x[a] * x[b]);
    return out;
  };

  auto fit = sample_lines(lines);
  if (!fit) {
    rep.status = QuadricReport::Status::NoWitnessRule;
    return rep;
  }
  fit->push_back(lt);
  fit->push_back(ls);
  rep.fitted_lines = fit->size();
  Matrix system(0, 10, field);
  for (const Line& l : *fit)
    for (const auto& x : line_points(l)) {
      const auto r = quadric_row(x);
      Matrix row(1, 10, field);
      for (std::size_t c = 0; c < 10; ++c) row(0, c) = r[c];
      system = vstack(system, row);
    }
  const Matrix k = kernel_basis(system);
  if (k.rows() == 0) {
    rep.status = QuadricReport::Status::NotOnQuadric;
    return rep;
  }
  if (k.rows() > 1) {
    rep.status = QuadricReport::Status::NotUnique;
    return rep;
  }
  rep.coefficients = row_of(k, 0);
  rep.symmetric = Matrix(4, 4, field);
  const Scalar half = Scalar::one(field) * Scalar(2, field).inverse();
  std::size_t idx = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b, ++idx) {
      if (a == b) {
        rep.symmetric(a, a) = rep.coefficients[idx];
      } else {
        rep.symmetric(a, b) = rep.coefficients[idx] * half;
        rep.symmetric(b, a) = rep.coefficients[idx] * half;
      }
    }
  rep.symmetric_rank = rank(rep.symmetric);

  const auto fresh = sample_lines(lines);
  for (const Line& l : *fresh) {
    ++rep.checked_lines;
    bool on = true;
    for (const auto& x : line_points(l)) {
      const Matrix v = rep.symmetric * column(x, field);
      Scalar q = Scalar::zero(field);
      for (std::size_t i = 0; i < 4; ++i) q += x[i] * v(i, 0);
      on = on && q.is_zero();
    }
    rep.lines_on_quadric += on;
  }
  return rep;
}

std::string to_string(Violation::Kind k) { return k == Violation::Kind::Skew ? "skew" : "coplanar"; }

namespace {

/// A 3-space span may meet the center in at most a point; a plane span must miss it.
/// Lower-dimensional spans impose nothing.
void check_span(const ProjSubspace& s, const ProjSubspace& center, bool jet, const ParamPoint& t,
                const ParamPoint& other, ProjectabilityReport& rep) {
  const ProjSubspace m = meet(s, center);
  if (span(s, center).dim() + m.dim() != s.dim() + center.dim()) ++rep.law_failures;
  if (s.dim() == 3) {
    ++rep.skew_spans;
    if (m.dim() > 0) rep.violations.push_back({Violation::Kind::Skew, jet, t, other, m.dim()});
  } else if (s.dim() == 2) {
    ++rep.plane_spans;
    if (m.dim() >= 0) rep.violations.push_back({Violation::Kind::Coplanar, jet, t, other, m.dim()});
  }
}

/// Span of the line at t and its first-order displacement along v.
ProjSubspace first_order_span(const LineFamily& f, std::span<const Scalar> t, std::span<const Scalar> v) {
  std::vector<Jet> tj;
  for (std::size_t i = 0; i < t.size(); ++i) tj.emplace_back(t[i], std::vector<Scalar>{v[i]});
  const JetMatrix e = f.eval(tj);
  Matrix rows(4, f.ambient() + 1, f.field());
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c <= f.ambient(); ++c) {
      rows(r, c) = e(r, c).value();
      rows(r + 2, c) = e(r, c).infinitesimal(0);
    }
  return ProjSubspace::from_rows(rows);
}

void require_compatible(const LineFamily& f, const ProjectionMap& p) {
  if (p.source_ambient() != f.ambient()) throw Error("ambient mismatch");
}

}  // namespace

ProjectabilityReport projectability_check(const LineFamily& f, const ProjectionMap& p, std::size_t trials,
                                          std::size_t jet_trials, Rng& rng,
                                          const std::vector<std::pair<ParamPoint, ParamPoint>>& extra_pairs) {
  require_compatible(f, p);
  ProjectabilityReport rep;
  rep.center = p.center();
  auto test_pair = [&](const ParamPoint& t, const ParamPoint& s) {
    const ProjSubspace sp = span(evaluate_line(f, t), evaluate_line(f, s));
    if (sp.dim() < 2) return false;
    ++rep.pairs_tested;
    check_span(sp, rep.center, false, t, s, rep);
    return true;
  };
  for (const auto& [t, s] : extra_pairs) test_pair(t, s);
  for (std::size_t i = 0; i < trials; ++i) {
    for (int attempt = 0; attempt < kMaxResamples; ++attempt)
      if (test_pair(f.generic_point(rng), f.generic_point(rng))) break;
  }
  for (std::size_t i = 0; i < jet_trials; ++i) {
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
      const auto t = f.generic_point(rng);
      const auto v = rng.point(t.size(), f.field());
      const ProjSubspace sp = first_order_span(f, t, v);
      if (sp.dim() < 2) continue;
      ++rep.jet_pairs_tested;
      check_span(sp, rep.center, true, t, v, rep);
      break;
    }
  }
  return rep;
}

ProjectabilityReport projectability_exhaustive(const LineFamily& f, const ProjectionMap& p) {
  require_compatible(f, p);
  ProjectabilityReport rep;
  rep.center = p.center();
  const auto pts = projective_points(f.param_dim(), f.field());
  std::vector<ParamPoint> genuine;
  for (const auto& t : pts)
    if (rank(f.eval(t)) == 2) genuine.push_back(t);
  for (std::size_t a = 0; a < genuine.size(); ++a) {
    for (std::size_t b = a + 1; b < genuine.size(); ++b) {
      const ProjSubspace sp = span(evaluate_line(f, genuine[a]), evaluate_line(f, genuine[b]));
      if (sp.dim() < 2) continue;
      ++rep.pairs_tested;
      check_span(sp, rep.center, false, genuine[a], genuine[b], rep);
    }
    for (const auto& v : pts) {
      const ProjSubspace sp = first_order_span(f, genuine[a], v);
      if (sp.dim() < 2) continue;
      ++rep.jet_pairs_tested;
      check_span(sp, rep.center, true, genuine[a], v, rep);
    }
  }
  return rep;
}

IncidenceTangentReport ix_tangent_check(std::size_t n, bool mutate) {
  if (n < 2) throw Error("ix_tangent_check needs n >= 2");
  const Field f = Field::rationals();
  const std::size_t cols = 2 * n + 2;
  IncidenceTangentReport rep;
  rep.n = n;

  // Free columns of each chart, and the tangent direction of every chart coordinate.
  std::vector<std::size_t> a_cols, b_cols, x_cols;
  for (std::size_t j = 2; j < cols; ++j) a_cols.push_back(j);
  for (std::size_t j = 0; j < cols; ++j)
    if (j != 2 && j != 3) b_cols.push_back(j);
  x_cols = {0, 1};
  for (std::size_t j = n + 2; j < cols; ++j) x_cols.push_back(j);

  std::size_t next = 0;
  auto assign = [&](const char* name, std::size_t rows, const std::vector<std::size_t>& free) {
    std::vector<std::vector<std::size_t>> idx(rows, std::vector<std::size_t>(cols, SIZE_MAX));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c : free) {
        idx[r][c] = next++;
        rep.labels.push_back(std::string(name) + "_" + std::to_string(r) + "," + std::to_string(c));
      }
    return idx;
  };
  const auto a_dir = assign("a", 2, a_cols);
  const auto b_dir = assign("b", 2, b_cols);
  const auto x_dir = assign("x", n, x_cols);
  const std::size_t dirs = next;

  auto constant = [&](long v) { return Jet(Scalar(v, f), dirs); };
  auto coordinate = [&](long base, std::size_t dir) { return Jet::variable(Scalar(base, f), dir, dirs); };

  Matrix system(0, dirs, f);
  for (std::size_t i = 0; i < 2; ++i) {
    JetMatrix m(n + 3, cols, f, dirs);
    for (std::size_t r = 0; r < n + 3; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = constant(0);
    // Rows of the chart around l1.
    for (std::size_t r = 0; r < 2; ++r) {
      m(r, r) = constant(1);
      for (std::size_t c : a_cols) m(r, c) = coordinate(0, a_dir[r][c]);
    }
    // Row i of the chart around l2: identity entry in column 2 + i.
    m(2, 2 + i) = constant(1);
    for (std::size_t c : b_cols) m(2, c) = coordinate(0, b_dir[i][c]);
    // Chart around the center: row r has 1 in column r + 2; row 1 starts at (1, 0).
    for (std::size_t r = 0; r < n; ++r) {
      m(3 + r, r + 2) = constant(1);
      for (std::size_t c : x_cols) m(3 + r, c) = coordinate(r == 1 && c == 0 ? 1 : 0, x_dir[r][c]);
    }
    for (const auto& subset : combinations(cols, n + 3)) {
      const Jet d = jet_determinant(m.select_columns(subset));
      if (!d.value().is_zero()) throw Error("base point is not on the incidence variety");
      Matrix row(1, dirs, f);
      for (std::size_t v = 0; v < dirs; ++v) row(0, v) = d.infinitesimal(v);
      system = vstack(system, row);
      ++rep.minors;
    }
  }
  rep.kernel = kernel_basis(system);
  rep.codimension = dirs - rep.kernel.rows();

  rep.expected = Matrix(2 * n, dirs, f);
  std::size_t e = 0;
  for (std::size_t j = n + 2; j < cols; ++j, ++e) {
    // x_0j - b_0j (or x_0j - 2 b_0j for the mutated first equation).
    rep.expected(e, x_dir[0][j]) = Scalar(1, f);
    rep.expected(e, b_dir[0][j]) = Scalar(mutate && j == n + 2 ? -2 : -1, f);
  }
  for (std::size_t j = n + 2; j < cols; ++j, ++e) {
    rep.expected(e, x_dir[1][j]) = Scalar(1, f);
    rep.expected(e, a_dir[0][j]) = Scalar(-1, f);
    rep.expected(e, b_dir[1][j]) = Scalar(-1, f);
  }
  rep.match = kernel_basis(rep.expected) == rep.kernel;
  return rep;
}

}  // namespace glab
