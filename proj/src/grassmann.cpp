#include "glab/grassmann.hpp"

#include <algorithm>

namespace glab {

std::size_t plucker_length(std::size_t ambient) { return (ambient + 1) * ambient / 2; }

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t ambient) {
  if (!(i < j && j <= ambient)) throw Error("invalid Plücker pair");
  // Pairs (a, b) with a < i come first: sum over a of (N - a).
  return i * ambient - i * (i - 1) / 2 + (j - i - 1);
}

std::vector<std::pair<std::size_t, std::size_t>> pair_list(std::size_t ambient) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i <= ambient; ++i)
    for (std::size_t j = i + 1; j <= ambient; ++j) out.emplace_back(i, j);
  return out;
}

PluckerVector::PluckerVector(std::size_t ambient, std::vector<Scalar> coords)
    : ambient_(ambient), coords_(std::move(coords)) {
  if (coords_.size() != plucker_length(ambient)) throw Error("Plücker vector has wrong length");
  auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (lead == coords_.end()) throw Error("Plücker vector is zero");
  const Scalar inv = lead->inverse();
  for (auto& s : coords_) s *= inv;
}

Scalar PluckerVector::at(std::size_t i, std::size_t j) const {
  if (i == j) return Scalar::zero(field());
  if (i < j) return coords_[pair_index(i, j, ambient_)];
  return -coords_[pair_index(j, i, ambient_)];
}

std::vector<Scalar> plucker_minors(const Matrix& m) {
  if (m.rows() != 2 || m.cols() < 2) throw Error("Plücker minors need a 2-row matrix");
  std::vector<Scalar> out;
  out.reserve(plucker_length(m.cols() - 1));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) out.push_back(m(0, i) * m(1, j) - m(0, j) * m(1, i));
  return out;
}

std::vector<Jet> plucker_minors(const JetMatrix& m) {
  if (m.rows() != 2 || m.cols() < 2) throw Error("Plücker minors need a 2-row matrix");
  std::vector<Jet> out;
  out.reserve(plucker_length(m.cols() - 1));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) out.push_back(m(0, i) * m(1, j) - m(0, j) * m(1, i));
  return out;
}

PluckerVector plucker(const Line& l) { return PluckerVector(l.ambient(), plucker_minors(l.basis())); }

bool plucker_relations_ok(std::size_t ambient, std::span<const Scalar> c) {
  if (c.size() != plucker_length(ambient)) throw Error("Plücker vector has wrong length");
  auto p = [&](std::size_t i, std::size_t j) -> const Scalar& { return c[pair_index(i, j, ambient)]; };
  for (std::size_t i = 0; i <= ambient; ++i)
    for (std::size_t j = i + 1; j <= ambient; ++j)
      for (std::size_t k = j + 1; k <= ambient; ++k)
        for (std::size_t l = k + 1; l <= ambient; ++l) {
          if (!(p(i, j) * p(k, l) - p(i, k) * p(j, l) + p(i, l) * p(j, k)).is_zero()) return false;
        }
  return true;
}

Line line_from_plucker(std::size_t ambient, std::span<const Scalar> c) {
  if (c.size() != plucker_length(ambient)) throw Error("Plücker vector has wrong length");
  if (!plucker_relations_ok(ambient, c)) throw Error("not decomposable");
  const auto pairs = pair_list(ambient);
  std::size_t lead = 0;
  while (lead < c.size() && c[lead].is_zero()) ++lead;
  if (lead == c.size()) throw Error("Plücker vector is zero");
  const auto [i, j] = pairs[lead];
  // For the line u ^ v, the contractions (p_{ik})_k and (p_{jk})_k are points of the line.
  const Field f = c.front().field();
  auto coord = [&](std::size_t a, std::size_t b) {
    if (a == b) return Scalar::zero(f);
    return a < b ? c[pair_index(a, b, ambient)] : -c[pair_index(b, a, ambient)];
  };
  Matrix m(2, ambient + 1, f);
  for (std::size_t k = 0; k <= ambient; ++k) {
    m(0, k) = coord(i, k);
    m(1, k) = coord(j, k);
  }
  Line l = Line::from_rows(m);
  if (plucker(l) != PluckerVector(ambient, {c.begin(), c.end()})) throw Error("not decomposable");
  return l;
}

Matrix exterior_square(const Matrix& m) {
  const std::size_t src = m.cols() - 1;
  const std::size_t dst = m.rows() - 1;
  const auto src_pairs = pair_list(src);
  const auto dst_pairs = pair_list(dst);
  Matrix out(dst_pairs.size(), src_pairs.size(), m.field());
  for (std::size_t r = 0; r < dst_pairs.size(); ++r) {
    const auto [a, b] = dst_pairs[r];
    for (std::size_t s = 0; s < src_pairs.size(); ++s) {
      const auto [i, j] = src_pairs[s];
      out(r, s) = m(a, i) * m(b, j) - m(a, j) * m(b, i);
    }
  }
  return out;
}

Scalar SchubertForm::operator()(std::span<const Scalar> plucker_coords) const {
  if (plucker_coords.size() != coefficients.size()) throw Error("ambient mismatch");
  Scalar acc = Scalar::zero(center.field());
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    if (!coefficients[k].is_zero()) acc += coefficients[k] * plucker_coords[k];
  return acc;
}

SchubertForm schubert_form(const ProjSubspace& p) {
  const std::size_t n = p.ambient();
  if (p.dim() != static_cast<int>(n) - 2) throw Error("Schubert form needs a codimension-2 subspace");
  const Matrix& dual = p.equations();
  // lambda(u ^ v) = f(u) g(v) - f(v) g(u) = sum_{k<l} (f_k g_l - f_l g_k) p_kl.
  SchubertForm form{p, plucker_minors(dual)};
  return form;
}

std::vector<std::size_t> chart_free_columns(const ChartFrame& frame, std::size_t ambient) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= ambient; ++j)
    if (j != frame.first && j != frame.second) out.push_back(j);
  return out;
}

ChartFrame default_frame(const Line& l) {
  const auto e = echelon(l.basis());
  return {e.pivots[0], e.pivots[1]};
}

namespace {

void check_frame(const ChartFrame& frame, std::size_t ambient) {
  if (frame.first == frame.second || frame.first > ambient || frame.second > ambient) {
    throw Error("invalid chart frame");
  }
}

}  // namespace

ChartPoint chart_coords(const Line& l, const ChartFrame& frame) {
  const std::size_t n = l.ambient();
  check_frame(frame, n);
  const Matrix& m = l.basis();
  const std::size_t cols[] = {frame.first, frame.second};
  const Matrix block = m.select_columns(cols);
  const Scalar det = determinant(block);
  if (det.is_zero()) throw Error("outside chart");
  Matrix inv(2, 2, m.field());
  const Scalar d = det.inverse();
  inv(0, 0) = block(1, 1) * d;
  inv(0, 1) = -block(0, 1) * d;
  inv(1, 0) = -block(1, 0) * d;
  inv(1, 1) = block(0, 0) * d;
  const Matrix normalized = inv * m;
  return {frame, normalized.select_columns(chart_free_columns(frame, n))};
}

Matrix chart_matrix(const ChartPoint& c) {
  const std::size_t n = c.ambient();
  check_frame(c.frame, n);
  if (c.coords.rows() != 2) throw Error("chart coordinates need 2 rows");
  const Field f = c.coords.field();
  Matrix m(2, n + 1, f);
  m(0, c.frame.first) = Scalar::one(f);
  m(1, c.frame.second) = Scalar::one(f);
  const auto free = chart_free_columns(c.frame, n);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t k = 0; k < free.size(); ++k) m(r, free[k]) = c.coords(r, k);
  return m;
}

Line chart_line(const ChartPoint& c) { return Line::from_rows(chart_matrix(c)); }

std::vector<Jet> chart_coords(const JetMatrix& m, const ChartFrame& frame) {
  if (m.rows() != 2) throw Error("chart coordinates need 2 rows");
  const std::size_t n = m.cols() - 1;
  check_frame(frame, n);
  const Jet& a = m(0, frame.first);
  const Jet& b = m(0, frame.second);
  const Jet& c = m(1, frame.first);
  const Jet& d = m(1, frame.second);
  const Jet det = a * d - b * c;
  if (det.value().is_zero()) throw Error("outside chart");
  // inverse of [[a, b], [c, d]] is [[d, -b], [-c, a]] / det
  std::vector<Jet> out;
  for (std::size_t k : chart_free_columns(frame, n)) out.push_back((d * m(0, k) - b * m(1, k)) / det);
  for (std::size_t k : chart_free_columns(frame, n)) out.push_back((a * m(1, k) - c * m(0, k)) / det);
  return out;
}

std::vector<Scalar> schubert_gradient(const SchubertForm& form, const Line& l, const ChartFrame& frame) {
  if (form.center.ambient() != l.ambient()) throw Error("ambient mismatch");
  const ChartPoint base = chart_coords(l, frame);
  const std::size_t n = l.ambient();
  const auto free = chart_free_columns(frame, n);
  const std::size_t dirs = 2 * free.size();
  const Field f = l.field();
  JetMatrix m(2, n + 1, f, dirs);
  m(0, frame.first) = Jet(Scalar::one(f), dirs);
  m(1, frame.second) = Jet(Scalar::one(f), dirs);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t k = 0; k < free.size(); ++k)
      m(r, free[k]) = Jet::variable(base.coords(r, k), r * free.size() + k, dirs);
  const auto minors = plucker_minors(m);
  Jet lambda(Scalar::zero(f), dirs);
  for (std::size_t k = 0; k < minors.size(); ++k)
    if (!form.coefficients[k].is_zero()) lambda += minors[k] * form.coefficients[k];
  return lambda.infinitesimal();
}

bool schubert_singular(const ProjSubspace& p, const Line& l, const ChartFrame& frame) {
  const SchubertForm form = schubert_form(p);
  if (!form(plucker(l)).is_zero()) throw Error("not on H_Π");
  const auto grad = schubert_gradient(form, l, frame);
  return std::all_of(grad.begin(), grad.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool schubert_singular(const ProjSubspace& p, const Line& l) { return schubert_singular(p, l, default_frame(l)); }

}  // namespace glab
