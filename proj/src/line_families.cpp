#include "glab/line_families.hpp"

#include <algorithm>
#include <set>

namespace glab {
namespace {

constexpr int kMaxResamples = 100;

bool all_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

MultiPoly var(std::size_t i, std::size_t nvars, Field f) { return MultiPoly::variable(i, nvars, f); }

/// The (r+2) x (2r+3) dual scroll matrix with s = t0 and u = t1 among `nvars` variables.
PolyMatrix dual_matrix(std::size_t r, std::size_t nvars, Field f) {
  const MultiPoly s = var(0, nvars, f);
  const MultiPoly u = var(1, nvars, f);
  PolyMatrix m(r + 2, 2 * r + 3, nvars, f);
  for (std::size_t i = 0; i < r; ++i) {
    m(i, 2 * i) = u;
    m(i, 2 * i + 1) = -s;
  }
  m(r, 2 * r) = u;
  m(r, 2 * r + 1) = -s;
  m(r + 1, 2 * r + 1) = u;
  m(r + 1, 2 * r + 2) = -s;
  return m;
}

void require_positive(std::size_t v, const char* what) {
  if (v < 1) throw Error(std::string(what) + " must be at least 1");
}

}  // namespace

PlaneFamily::PlaneFamily(PolyMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.num_vars() == 0) throw Error("family needs at least one row and one parameter");
  if (m_.cols() < m_.rows()) throw Error("family has more rows than coordinates");
  for (std::size_t i = 0; i < m_.rows(); ++i) (void)m_.row_degree(i);
}

int PlaneFamily::degree() const {
  int d = -1;
  for (std::size_t i = 0; i < m_.rows(); ++i) d = std::max(d, m_.row_degree(i));
  return d;
}

ProjSubspace PlaneFamily::subspace_at(std::span<const Scalar> t) const {
  if (t.size() != m_.num_vars()) throw Error("parameter point has wrong length");
  if (all_zero(t)) throw Error("zero parameter vector");
  const Matrix e = eval(t);
  const std::size_t rk = rank(e);
  if (rk < m_.rows()) {
    throw Error("degenerate parameter point: evaluation has rank " + std::to_string(rk) + " < " +
                std::to_string(m_.rows()));
  }
  return ProjSubspace::from_rows(e);
}

std::vector<Scalar> PlaneFamily::generic_point(Rng& rng) const {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    auto t = rng.point(m_.num_vars(), field());
    if (rank(eval(t)) == m_.rows()) return t;
  }
  throw Error("no parameter point with full-rank evaluation after 100 samples");
}

LineFamily::LineFamily(PolyMatrix m) : PlaneFamily(std::move(m)) {
  if (matrix().rows() != 2) throw Error("a line family needs exactly 2 rows");
}

Line evaluate_line(const LineFamily& f, std::span<const Scalar> t) { return Line(f.subspace_at(t)); }

ProjectionMap ProjectionMap::from_matrix(Matrix m) {
  if (m.rows() == 0 || rank(m) != m.rows()) throw Error("projection matrix must have full row rank");
  ProjSubspace center = ProjSubspace::from_equations(m);
  return ProjectionMap(std::move(m), std::move(center));
}

ProjectionMap ProjectionMap::from_center(const ProjSubspace& center) {
  if (center.dim() == static_cast<int>(center.ambient())) throw Error("center is the whole space");
  return ProjectionMap(center.equations(), center);
}

LineFamily veronese_family(std::size_t n, Field f) {
  require_positive(n, "n");
  PolyMatrix m(2, 2 * n + 2, n + 1, f);
  for (std::size_t j = 0; j <= n; ++j) {
    m(0, j) = var(j, n + 1, f);
    m(1, n + 1 + j) = var(j, n + 1, f);
  }
  return LineFamily(std::move(m));
}

ProjectionMap veronese_projection(std::size_t n, Field f) {
  require_positive(n, "n");
  Matrix m(n + 2, 2 * n + 2, f);
  m(0, 0) = Scalar::one(f);
  for (std::size_t i = 1; i <= n; ++i) {
    m(i, i) = Scalar::one(f);
    m(i, n + i) = Scalar::one(f);
  }
  m(n + 1, 2 * n + 1) = Scalar::one(f);
  return ProjectionMap::from_matrix(std::move(m));
}

LineFamily apply_projection(const ProjectionMap& p, const LineFamily& f) {
  if (p.source_ambient() != f.ambient()) throw Error("ambient mismatch");
  // A single unlucky sample can meet the center; two in a row means the generic line does.
  Rng rng(0x9e3779b97f4a7c15ULL);
  bool meets = true;
  for (int trial = 0; trial < 2 && meets; ++trial) {
    const auto t = f.generic_point(rng);
    meets = line_meets(evaluate_line(f, t), p.center());
  }
  if (meets) throw Error("projection undefined on family");
  return LineFamily(f.matrix().multiply_right(p.matrix().transpose()));
}

DoubleVeroneseReport double_veronese_check(std::size_t n, Rng& rng, std::size_t random_pairs,
                                           std::size_t immersion_points, Field q) {
  DoubleVeroneseReport rep;
  rep.n = n;
  const LineFamily projected = apply_projection(veronese_projection(n, q), veronese_family(n, q));
  const auto minors = projected.matrix().maximal_minors();
  rep.expected_rank = minors.size();
  rep.minor_rank = coefficient_rank(minors, 2);

  if (n <= 2) {
    const Field f5 = Field::prime(5);
    const LineFamily small = apply_projection(veronese_projection(n, f5), veronese_family(n, f5));
    std::set<std::string> images;
    for (const auto& t : projective_points(n, f5)) {
      ++rep.exhaustive_points;
      const Matrix e = small.eval(t);
      if (rank(e) < 2) {
        rep.injective = false;
        continue;
      }
      std::string key;
      for (const auto& c : plucker(Line::from_rows(e)).coords()) key += c.to_string() + ",";
      if (!images.insert(key).second) rep.injective = false;
    }
  }

  for (std::size_t i = 0; i < random_pairs; ++i) {
    const auto t = projected.generic_point(rng);
    auto s = projected.generic_point(rng);
    Matrix both(2, n + 1, q);
    for (std::size_t j = 0; j <= n; ++j) {
      both(0, j) = t[j];
      both(1, j) = s[j];
    }
    if (rank(both) < 2) continue;
    ++rep.random_pairs;
    if (plucker(evaluate_line(projected, t)) == plucker(evaluate_line(projected, s))) rep.injective = false;
  }

  rep.min_differential_rank = n + 1;
  for (std::size_t i = 0; i < immersion_points; ++i) {
    const auto t = projected.generic_point(rng);
    const std::size_t rk = rank(jacobian_at(minors, t));
    ++rep.immersion_points;
    rep.min_differential_rank = std::min(rep.min_differential_rank, rk);
    if (rk != n + 1) rep.immersive = false;
  }
  return rep;
}

PlaneFamily scroll_fiber_family(std::size_t r, Field f) {
  require_positive(r, "r");
  const MultiPoly s = var(0, 2, f);
  const MultiPoly u = var(1, 2, f);
  PolyMatrix m(r + 1, 2 * r + 3, 2, f);
  for (std::size_t i = 0; i < r; ++i) {
    m(i, 2 * i) = s;
    m(i, 2 * i + 1) = u;
  }
  m(r, 2 * r) = s * s;
  m(r, 2 * r + 1) = s * u;
  m(r, 2 * r + 2) = u * u;
  return PlaneFamily(std::move(m));
}

PlaneFamily scroll_dual_family(std::size_t r, Field f) {
  require_positive(r, "r");
  return PlaneFamily(dual_matrix(r, 2, f));
}

ScrollLift scroll_lift(std::size_t r, Field f) {
  require_positive(r, "r");
  const MultiPoly s = var(0, 2, f);
  const MultiPoly u = var(1, 2, f);
  PolyMatrix m(r + 2, 2 * r + 4, 2, f);
  for (std::size_t i = 0; i < r + 2; ++i) {
    m(i, 2 * i) = u;
    m(i, 2 * i + 1) = -s;
  }
  Matrix merge(2 * r + 3, 2 * r + 4, f);
  for (std::size_t i = 0; i < 2 * r; ++i) merge(i, i) = Scalar::one(f);
  merge(2 * r, 2 * r) = Scalar::one(f);
  merge(2 * r + 1, 2 * r + 1) = Scalar::one(f);
  merge(2 * r + 1, 2 * r + 2) = Scalar::one(f);
  merge(2 * r + 2, 2 * r + 3) = Scalar::one(f);
  return {PlaneFamily(std::move(m)), ProjectionMap::from_matrix(std::move(merge))};
}

LineFamily scroll_line_family(std::size_t r, Field f) {
  require_positive(r, "r");
  const std::size_t nvars = 2 * r + 2;
  const PolyMatrix d = dual_matrix(r, nvars, f);
  // Coefficient vectors over the r+2 dual rows: (s, 0, a_2..) and (0, s, b_2..).
  std::vector<std::vector<MultiPoly>> coeff(2, std::vector<MultiPoly>(r + 2, MultiPoly(nvars, f)));
  coeff[0][0] = var(0, nvars, f);
  coeff[1][1] = var(0, nvars, f);
  for (std::size_t k = 0; k < r; ++k) {
    coeff[0][k + 2] = var(2 + k, nvars, f);
    coeff[1][k + 2] = var(2 + r + k, nvars, f);
  }
  PolyMatrix m(2, d.cols(), nvars, f);
  for (std::size_t row = 0; row < 2; ++row)
    for (std::size_t col = 0; col < d.cols(); ++col)
      for (std::size_t k = 0; k < d.rows(); ++k)
        if (!coeff[row][k].is_zero() && !d(k, col).is_zero()) m(row, col) += coeff[row][k] * d(k, col);
  return LineFamily(std::move(m));
}

UnionDimension union_dimension(const PlaneFamily& f, Rng& rng, std::size_t samples) {
  const std::size_t nt = f.param_dim() + 1;
  const std::size_t rows = f.plane_dim() + 1;
  const std::size_t dirs = nt + rows;
  const Field field = f.field();
  UnionDimension out;
  out.cap = std::min(f.ambient(), f.param_dim() + f.plane_dim());
  std::size_t best = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto t = f.generic_point(rng);
    std::vector<Jet> tj;
    for (std::size_t i = 0; i < nt; ++i) tj.push_back(Jet::variable(t[i], i, dirs));
    const JetMatrix m = f.eval(tj);
    std::vector<Jet> mu;
    for (std::size_t i = 0; i < rows; ++i) mu.push_back(Jet::variable(rng.scalar(field), nt + i, dirs));
    Matrix jac(f.ambient() + 1, dirs, field);
    for (std::size_t c = 0; c <= f.ambient(); ++c) {
      Jet acc(Scalar::zero(field), dirs);
      for (std::size_t i = 0; i < rows; ++i) acc += mu[i] * m(i, c);
      for (std::size_t d = 0; d < dirs; ++d) jac(c, d) = acc.infinitesimal(d);
    }
    best = std::max(best, rank(jac));
  }
  out.dim = best == 0 ? 0 : best - 1;
  out.exact = out.dim == out.cap;
  return out;
}

nlohmann::json family_to_json(const PlaneFamily& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < f.matrix().cols(); ++j) row.push_back(f.matrix()(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return {{"ambient", f.ambient()}, {"param_dim", f.param_dim()}, {"degree", f.degree()}, {"rows", rows}};
}

PlaneFamily family_from_json(const nlohmann::json& j, Field f) {
  try {
    const auto ambient = j.at("ambient").get<std::size_t>();
    const auto param_dim = j.at("param_dim").get<std::size_t>();
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.empty()) throw Error("family rows must be a nonempty array");
    PolyMatrix m(rows.size(), ambient + 1, param_dim + 1, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != ambient + 1) throw Error("family row " + std::to_string(i) + " has wrong length");
      for (std::size_t c = 0; c <= ambient; ++c)
        m(i, c) = MultiPoly::parse(rows[i][c].get<std::string>(), param_dim + 1, f);
    }
    PlaneFamily fam(std::move(m));
    if (j.contains("degree") && j.at("degree").get<int>() != fam.degree()) {
      throw Error("declared degree does not match the entries");
    }
    return fam;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed family JSON: ") + e.what());
  }
}

}  // namespace glab
