#include "glab/proj_space.hpp"

namespace glab {
namespace {

void require_same_ambient(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.ambient() != b.ambient()) throw Error("ambient mismatch");
  if (a.field() != b.field()) throw FieldMismatch();
}

}  // namespace

ProjSubspace::ProjSubspace(Matrix canonical_basis)
    : basis_(std::move(canonical_basis)), dual_(std::make_shared<DualCache>()) {}

ProjSubspace ProjSubspace::from_rows(const Matrix& m) {
  if (m.cols() == 0) throw Error("subspace needs at least one coordinate");
  return ProjSubspace(row_basis(m));
}

ProjSubspace ProjSubspace::empty(std::size_t ambient, Field field) { return ProjSubspace(Matrix(0, ambient + 1, field)); }

ProjSubspace ProjSubspace::whole(std::size_t ambient, Field field) {
  return ProjSubspace(Matrix::identity(ambient + 1, field));
}

ProjSubspace ProjSubspace::from_equations(const Matrix& equations) { return ProjSubspace(kernel_basis(equations)); }

const Matrix& ProjSubspace::equations() const {
  std::call_once(dual_->once, [this] { dual_->equations = std::make_unique<Matrix>(kernel_basis(basis_)); });
  return *dual_->equations;
}

bool ProjSubspace::contains_point(std::span<const Scalar> v) const {
  if (v.size() != basis_.cols()) throw Error("ambient mismatch");
  const Matrix& eq = equations();
  for (std::size_t i = 0; i < eq.rows(); ++i) {
    Scalar acc = Scalar::zero(field());
    for (std::size_t j = 0; j < v.size(); ++j) acc += eq(i, j) * v[j];
    if (!acc.is_zero()) return false;
  }
  return true;
}

Line::Line(ProjSubspace s) : s_(std::move(s)) {
  if (s_.dim() != 1) throw Error("not a line: projective dimension " + std::to_string(s_.dim()));
}

ProjSubspace subspace_from_rows(const Matrix& m) { return ProjSubspace::from_rows(m); }

ProjSubspace span(const ProjSubspace& a, const ProjSubspace& b) {
  require_same_ambient(a, b);
  return ProjSubspace::from_rows(vstack(a.basis(), b.basis()));
}

ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b) {
  require_same_ambient(a, b);
  return ProjSubspace::from_equations(vstack(a.equations(), b.equations()));
}

bool contains(const ProjSubspace& a, const ProjSubspace& b) {
  require_same_ambient(a, b);
  if (b.dim() > a.dim()) return false;
  return rank(vstack(a.basis(), b.basis())) == a.basis().rows();
}

bool line_meets(const Line& l, const ProjSubspace& p) {
  require_same_ambient(l, p);
  return static_cast<int>(rank(vstack(l.basis(), p.basis()))) <= 2 + p.dim();
}

std::vector<std::vector<Scalar>> projective_points(std::size_t dim, Field f) {
  if (f.is_rational()) throw Error("point enumeration needs a prime field");
  const std::uint64_t q = f.modulus();
  double count = 0;
  for (std::size_t k = 0; k <= dim; ++k) count = count * static_cast<double>(q) + 1;
  if (count > 1e6) throw Error("too many points to enumerate");

  std::vector<std::vector<Scalar>> out;
  // Leading coordinate k is 1, earlier coordinates 0, later ones arbitrary.
  for (std::size_t lead = 0; lead <= dim; ++lead) {
    const std::size_t tail = dim - lead;
    std::vector<std::uint64_t> digits(tail, 0);
    for (;;) {
      std::vector<Scalar> v(dim + 1, Scalar::zero(f));
      v[lead] = Scalar::one(f);
      for (std::size_t i = 0; i < tail; ++i) v[lead + 1 + i] = Scalar(static_cast<long>(digits[i]), f);
      out.push_back(std::move(v));
      std::size_t pos = tail;
      while (pos > 0 && ++digits[pos - 1] == q) digits[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

}  // namespace glab
