#include "glab/jet.hpp"

#include <bit>
#include <optional>

#include "glab/matrix.hpp"

namespace glab {

Jet::Jet(Scalar value, std::vector<Scalar> inf) : value_(std::move(value)), directions_(inf.size()), inf_(std::move(inf)) {
  for (const auto& s : inf_)
    if (s.field() != value_.field()) throw FieldMismatch();
}

Jet Jet::variable(Scalar value, std::size_t direction, std::size_t directions) {
  if (direction >= directions) throw Error("jet direction out of range");
  const Field f = value.field();
  std::vector<Scalar> inf(directions, Scalar::zero(f));
  inf[direction] = Scalar::one(f);
  return Jet(std::move(value), std::move(inf));
}

Scalar Jet::infinitesimal(std::size_t d) const {
  if (d >= directions_) throw Error("jet direction out of range");
  return inf_.empty() ? Scalar::zero(field()) : inf_[d];
}

std::vector<Scalar> Jet::infinitesimal() const {
  if (inf_.empty()) return std::vector<Scalar>(directions_, Scalar::zero(field()));
  return inf_;
}

bool Jet::is_zero() const {
  if (!value_.is_zero()) return false;
  for (const auto& s : inf_)
    if (!s.is_zero()) return false;
  return true;
}

void Jet::require_compatible(const Jet& o) const {
  if (directions_ != o.directions_) throw Error("jet direction count mismatch");
}

Jet Jet::operator-() const {
  Jet out(-value_, directions_);
  out.inf_.reserve(inf_.size());
  for (const auto& s : inf_) out.inf_.push_back(-s);
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  require_compatible(o);
  value_ += o.value_;
  if (o.inf_.empty()) return *this;
  if (inf_.empty()) {
    inf_ = o.inf_;
  } else {
    for (std::size_t d = 0; d < inf_.size(); ++d) inf_[d] += o.inf_[d];
  }
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_compatible(o);
  value_ -= o.value_;
  if (o.inf_.empty()) return *this;
  if (inf_.empty()) {
    inf_.reserve(o.inf_.size());
    for (const auto& s : o.inf_) inf_.push_back(-s);
  } else {
    for (std::size_t d = 0; d < inf_.size(); ++d) inf_[d] -= o.inf_[d];
  }
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  require_compatible(o);
  // inf(ab) = a.value * inf(b) + b.value * inf(a)
  if (!inf_.empty()) {
    for (auto& s : inf_) s *= o.value_;
  }
  if (!o.inf_.empty() && !value_.is_zero()) {
    if (inf_.empty()) {
      inf_.reserve(o.inf_.size());
      for (const auto& s : o.inf_) inf_.push_back(value_ * s);
    } else {
      for (std::size_t d = 0; d < inf_.size(); ++d) inf_[d] += value_ * o.inf_[d];
    }
  }
  value_ *= o.value_;
  return *this;
}

Jet& Jet::operator*=(const Scalar& s) {
  value_ *= s;
  for (auto& x : inf_) x *= s;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  require_compatible(o);
  const Scalar inv = o.value_.inverse();
  const Scalar q = value_ * inv;
  // inf(a/b) = inf(a)/b.value - (a.value/b.value^2) inf(b)
  for (auto& s : inf_) s *= inv;
  if (!o.inf_.empty() && !q.is_zero()) {
    const Scalar coeff = q * inv;
    if (inf_.empty()) inf_.assign(directions_, Scalar::zero(field()));
    for (std::size_t d = 0; d < inf_.size(); ++d) inf_[d] -= coeff * o.inf_[d];
  }
  value_ = q;
  return *this;
}

bool operator==(const Jet& a, const Jet& b) {
  return a.directions_ == b.directions_ && a.value_ == b.value_ && a.infinitesimal() == b.infinitesimal();
}

JetMatrix::JetMatrix(std::size_t rows, std::size_t cols, Field field, std::size_t directions)
    : rows_(rows), cols_(cols), field_(field), directions_(directions),
      data_(rows * cols, Jet(Scalar::zero(field), directions)) {}

JetMatrix JetMatrix::select_columns(std::span<const std::size_t> idx) const {
  JetMatrix out(rows_, idx.size(), field_, directions_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

JetMatrix JetMatrix::select_rows(std::span<const std::size_t> idx) const {
  JetMatrix out(idx.size(), cols_, field_, directions_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
  return out;
}

namespace {

void require_square(const JetMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
}

}  // namespace

Jet jet_determinant_cofactor(const JetMatrix& m) {
  require_square(m);
  const std::size_t n = m.rows();
  if (n > 20) throw Error("cofactor expansion: matrix too large");
  const Field f = m.field();
  if (n == 0) return Jet(Scalar::one(f), m.directions());
  std::vector<std::optional<Jet>> memo(std::size_t{1} << n);
  // det of rows [n - |mask|, n) restricted to the columns in mask.
  auto solve = [&](auto&& self, std::uint32_t mask) -> const Jet& {
    auto& slot = memo[mask];
    if (slot) return *slot;
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    Jet acc(Scalar::zero(f), m.directions());
    if (mask == 0) {
      acc = Jet(Scalar::one(f), m.directions());
    } else {
      std::size_t position = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask & (1U << j))) continue;
        const Jet& entry = m(row, j);
        if (!entry.is_zero()) {
          Jet term = entry * self(self, mask & ~(1U << j));
          if (position % 2 == 0) acc += term;
          else acc -= term;
        }
        ++position;
      }
    }
    slot = std::move(acc);
    return *slot;
  };
  return solve(solve, static_cast<std::uint32_t>((std::size_t{1} << n) - 1));
}

Jet jet_determinant_elimination(const JetMatrix& m) {
  require_square(m);
  const std::size_t n = m.rows();
  const Field f = m.field();
  const std::size_t dirs = m.directions();
  JetMatrix a = m;
  Jet acc(Scalar::one(f), dirs);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).value().is_zero()) ++piv;
    if (piv == n) {
      // Column col is infinitesimal on the remaining block; expand along it.
      const std::size_t k = n - col;
      Matrix values(k, k, f);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) values(i, j) = a(col + i, col + j).value();
      std::vector<Scalar> inf(dirs, Scalar::zero(f));
      std::vector<std::size_t> rest_cols;
      for (std::size_t j = 1; j < k; ++j) rest_cols.push_back(j);
      for (std::size_t i = 0; i < k; ++i) {
        const Jet& entry = a(col + i, col);
        if (!entry.has_infinitesimal()) continue;
        std::vector<std::size_t> rest_rows;
        for (std::size_t r = 0; r < k; ++r)
          if (r != i) rest_rows.push_back(r);
        Scalar cof = determinant(values.select_rows(rest_rows).select_columns(rest_cols));
        if (cof.is_zero()) continue;
        if (i % 2 == 1) cof = -cof;
        for (std::size_t d = 0; d < dirs; ++d) inf[d] += entry.infinitesimal(d) * cof;
      }
      for (auto& s : inf) s *= acc.value();
      return Jet(Scalar::zero(f), std::move(inf));
    }
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(piv, j), a(col, j));
      acc = -acc;
    }
    acc *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      const Jet factor = a(i, col) / a(col, col);
      for (std::size_t j = col + 1; j < n; ++j) {
        if (!a(col, j).is_zero()) a(i, j) -= factor * a(col, j);
      }
    }
  }
  return acc;
}

Jet jet_determinant(const JetMatrix& m) {
  return m.rows() <= 6 ? jet_determinant_cofactor(m) : jet_determinant_elimination(m);
}

}  // namespace glab
