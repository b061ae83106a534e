#include "glab/matrix.hpp"

#include <sstream>
#include <utility>

namespace glab {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_ints(std::initializer_list<std::initializer_list<long>> rows, Field field) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c, field);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = Scalar(v, field);
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols, Field field) {
  Matrix m(rows.size(), cols, field);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Scalar> Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_, field_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size(), field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

void Matrix::check_field() const {
  for (const auto& s : data_)
    if (s.field() != field_) throw FieldMismatch();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_) throw FieldMismatch();
  if (a.cols_ != b.rows_) throw Error("matrix product: dimension mismatch");
  Matrix out(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.field() != bottom.field()) throw FieldMismatch();
  if (top.cols() != bottom.cols()) throw Error("vstack: column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols(), top.field());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

Echelon echelon(const Matrix& m) {
  m.check_field();
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < a.cols() && lead < a.rows(); ++col) {
    std::size_t piv = lead;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != lead)
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(lead, j));
    const Scalar inv = a(lead, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) a(lead, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead || a(i, col).is_zero()) continue;
      const Scalar f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        if (!a(lead, j).is_zero()) a(i, j) -= f * a(lead, j);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(a), std::move(pivots)};
}

Matrix rref(const Matrix& m) { return echelon(m).reduced; }

Matrix row_basis(const Matrix& m) {
  auto e = echelon(m);
  std::vector<std::size_t> keep(e.pivots.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return e.reduced.select_rows(keep);
}

std::size_t rank(const Matrix& m) { return echelon(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
  const auto e = echelon(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(f));
    v[free] = Scalar::one(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return row_basis(Matrix::from_rows(basis, m.cols(), f));
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  m.check_field();
  Matrix a = m;
  Scalar det = Scalar::one(m.field());
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return Scalar::zero(m.field());
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const Scalar inv = a(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      const Scalar f = a(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::vector<Scalar> row_coordinates(const Matrix& basis, std::span<const Scalar> v) {
  if (v.size() != basis.cols()) throw Error("row_coordinates: length mismatch");
  // Solve basis^T x = v through the kernel of [basis^T | -v].
  Matrix aug(basis.cols(), basis.rows() + 1, basis.field());
  for (std::size_t i = 0; i < basis.cols(); ++i) {
    for (std::size_t j = 0; j < basis.rows(); ++j) aug(i, j) = basis(j, i);
    aug(i, basis.rows()) = -v[i];
  }
  const Matrix k = kernel_basis(aug);
  // Independent rows: the kernel is at most one-dimensional, with last entry nonzero iff solvable.
  if (k.rows() != 1 || k(0, basis.rows()).is_zero()) throw Error("vector not in row space");
  const Scalar scale = k(0, basis.rows()).inverse();
  std::vector<Scalar> x;
  x.reserve(basis.rows());
  for (std::size_t j = 0; j < basis.rows(); ++j) x.push_back(k(0, j) * scale);
  return x;
}

}  // namespace glab
