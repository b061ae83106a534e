#include "glab/multipoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>

namespace glab {

std::uint32_t total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), std::uint32_t{0}); }

bool GrlexDescending::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Exponent> monomials_of_degree(std::size_t nvars, std::uint32_t d) {
  std::vector<Exponent> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponent e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t var, std::uint32_t left) -> void {
    if (var + 1 == nvars) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

MultiPoly MultiPoly::constant(const Scalar& c, std::size_t nvars) {
  MultiPoly p(nvars, c.field());
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t index, std::size_t nvars, Field field) {
  if (index >= nvars) throw Error("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(e, Scalar::one(field));
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Scalar& c) {
  MultiPoly p(e.size(), c.field());
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Scalar& c) {
  if (c.field() != field_) throw FieldMismatch();
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::require_compatible(const MultiPoly& o) const {
  if (field_ != o.field_) throw FieldMismatch();
  if (nvars_ != o.nvars_) throw Error("polynomial variable count mismatch");
}

int MultiPoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first));
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

Scalar MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= nvars_) throw Error("variable index out of range");
  MultiPoly out(nvars_, field_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    out.add_term(d, c * Scalar(static_cast<long>(e[var]), field_));
  }
  return out;
}

namespace {

// Evaluates sum c * prod t_i^e_i for any ring type with +=, *= and a way to
// lift field constants.
template <class T, class Lift>
T evaluate_terms(const MultiPoly& p, std::span<const T> point, T zero, Lift lift) {
  if (point.size() != p.num_vars()) throw Error("evaluation point length mismatch");
  std::vector<std::uint32_t> max_exp(p.num_vars(), 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
  std::vector<std::vector<T>> powers(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    if (max_exp[i] < 2) continue;
    powers[i].reserve(max_exp[i] + 1);
    powers[i].push_back(point[i]);
    for (std::uint32_t k = 2; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  T acc = zero;
  for (const auto& [e, c] : p.terms()) {
    std::optional<T> term;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const T& f = e[i] == 1 ? point[i] : powers[i][e[i] - 1];
      if (term) *term = *term * f;
      else term = f;
    }
    if (term) acc += *term * c;
    else acc += lift(c);
  }
  return acc;
}

}  // namespace

Scalar MultiPoly::eval(std::span<const Scalar> point) const {
  for (const auto& s : point)
    if (s.field() != field_) throw FieldMismatch();
  return evaluate_terms<Scalar>(*this, point, Scalar::zero(field_), [](const Scalar& c) { return c; });
}

Jet MultiPoly::eval(std::span<const Jet> point) const {
  const std::size_t dirs = point.empty() ? 0 : point.front().directions();
  for (const auto& j : point)
    if (j.field() != field_) throw FieldMismatch();
  return evaluate_terms<Jet>(*this, point, Jet(Scalar::zero(field_), dirs),
                             [dirs](const Scalar& c) { return Jet(c, dirs); });
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> substitution) const {
  const std::size_t inner = substitution.empty() ? 0 : substitution.front().num_vars();
  for (const auto& s : substitution) {
    if (s.field() != field_) throw FieldMismatch();
    if (s.num_vars() != inner) throw Error("polynomial variable count mismatch");
  }
  return evaluate_terms<MultiPoly>(*this, substitution, MultiPoly(inner, field_),
                                   [inner](const Scalar& c) { return MultiPoly::constant(c, inner); });
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(nvars_, field_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& s) {
  if (s.field() != field_) throw FieldMismatch();
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_compatible(b);
  MultiPoly out(a.nvars_, a.field_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = false;
    if (field_.is_rational() && sgn(c.rational()) < 0) {
      negative = true;
      coeff = (-c).to_string();
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = total_degree(e) == 0;
    bool need_star = false;
    if (coeff != "1" || is_const) {
      os << coeff;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << 't' << i;
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

MultiPoly MultiPoly::parse(std::string_view text, std::size_t nvars, Field field) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto fail = [&](const std::string& why) -> Error {
    return Error("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) throw fail("empty input");
  MultiPoly out(nvars, field);
  std::size_t pos = 0;
  auto read_digits = [&]() {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw fail("expected '+' or '-'");
    }
    Scalar coeff = Scalar::one(field);
    Exponent e(nvars, 0);
    bool any_factor = false;
    for (;;) {
      if (pos >= s.size()) throw fail("dangling operator");
      if (s[pos] == 't') {
        ++pos;
        const std::string idx = read_digits();
        if (idx.empty()) throw fail("missing variable index");
        const std::size_t var = std::stoul(idx);
        if (var >= nvars) throw fail("variable t" + idx + " out of range");
        std::uint32_t power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          const std::string p = read_digits();
          if (p.empty()) throw fail("missing exponent");
          power = static_cast<std::uint32_t>(std::stoul(p));
        }
        e[var] += power;
      } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::string num = read_digits();
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          const std::string den = read_digits();
          if (den.empty()) throw fail("missing denominator");
          num += "/" + den;
        }
        coeff *= Scalar::parse(num, field);
      } else {
        throw fail(std::string("unexpected character '") + s[pos] + "'");
      }
      any_factor = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) throw fail("empty term");
    out.add_term(e, negative ? -coeff : coeff);
  }
  return out;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars, Field field)
    : rows_(rows), cols_(cols), nvars_(nvars), field_(field), data_(rows * cols, MultiPoly(nvars, field)) {}

Matrix PolyMatrix::eval(std::span<const Scalar> point) const {
  Matrix m(rows_, cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(point);
  return m;
}

JetMatrix PolyMatrix::eval(std::span<const Jet> point) const {
  const std::size_t dirs = point.empty() ? 0 : point.front().directions();
  JetMatrix m(rows_, cols_, field_, dirs);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(point);
  return m;
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const auto& p : data_) d = std::max(d, p.degree());
  return d;
}

int PolyMatrix::row_degree(std::size_t i) const {
  int d = -1;
  for (std::size_t j = 0; j < cols_; ++j) {
    const auto& p = (*this)(i, j);
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) throw Error("row " + std::to_string(i) + " has a non-homogeneous entry");
    if (d >= 0 && p.degree() != d) throw Error("row " + std::to_string(i) + " mixes degrees");
    d = p.degree();
  }
  return d;
}

PolyMatrix PolyMatrix::multiply_right(const Matrix& m) const {
  if (m.field() != field_) throw FieldMismatch();
  if (m.rows() != cols_) throw Error("polynomial matrix product: dimension mismatch");
  PolyMatrix out(rows_, m.cols(), nvars_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& p = (*this)(i, k);
      if (p.is_zero()) continue;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(k, j).is_zero()) out(i, j) += p * m(k, j);
    }
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, nvars_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.field_ != b.field_) throw FieldMismatch();
  if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) throw Error("polynomial matrix product: dimension mismatch");
  PolyMatrix out(a.rows_, b.cols_, a.nvars_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ && a.field_ == b.field_ &&
         a.data_ == b.data_;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

namespace {

MultiPoly poly_determinant(const PolyMatrix& m, std::span<const std::size_t> cols) {
  const std::size_t n = m.rows();
  std::vector<std::optional<MultiPoly>> memo(std::size_t{1} << n);
  auto solve = [&](auto&& self, std::uint32_t mask) -> const MultiPoly& {
    auto& slot = memo[mask];
    if (slot) return *slot;
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    MultiPoly acc(m.num_vars(), m.field());
    if (mask == 0) {
      acc = MultiPoly::constant(Scalar::one(m.field()), m.num_vars());
    } else {
      std::size_t position = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask & (1U << j))) continue;
        const MultiPoly& entry = m(row, cols[j]);
        if (!entry.is_zero()) {
          MultiPoly term = entry * self(self, mask & ~(1U << j));
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

}  // namespace

std::vector<MultiPoly> PolyMatrix::maximal_minors() const {
  if (rows_ > cols_) throw Error("maximal minors need rows <= cols");
  std::vector<MultiPoly> out;
  for (const auto& c : combinations(cols_, rows_)) out.push_back(poly_determinant(*this, c));
  return out;
}

std::vector<Jet> jet_point(std::span<const Scalar> point) {
  std::vector<Jet> out;
  out.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out.push_back(Jet::variable(point[i], i, point.size()));
  return out;
}

namespace {

void require_common_arity(std::span<const MultiPoly> polys, std::size_t n) {
  for (const auto& p : polys)
    if (p.num_vars() != n) throw Error("evaluation point length mismatch");
}

}  // namespace

Matrix jacobian_at(std::span<const MultiPoly> polys, std::span<const Scalar> point) {
  require_common_arity(polys, point.size());
  const Field f = point.empty() ? (polys.empty() ? Field::rationals() : polys.front().field()) : point.front().field();
  const auto jp = jet_point(point);
  Matrix j(polys.size(), point.size(), f);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const Jet v = polys[i].eval(jp);
    for (std::size_t d = 0; d < point.size(); ++d) j(i, d) = v.infinitesimal(d);
  }
  return j;
}

Matrix jacobian_symbolic(std::span<const MultiPoly> polys, std::span<const Scalar> point) {
  require_common_arity(polys, point.size());
  const Field f = point.empty() ? (polys.empty() ? Field::rationals() : polys.front().field()) : point.front().field();
  Matrix j(polys.size(), point.size(), f);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t d = 0; d < point.size(); ++d) j(i, d) = polys[i].derivative(d).eval(point);
  return j;
}

std::size_t coefficient_rank(std::span<const MultiPoly> polys, std::uint32_t degree) {
  if (polys.empty()) return 0;
  const std::size_t nvars = polys.front().num_vars();
  const Field f = polys.front().field();
  for (const auto& p : polys) {
    if (p.num_vars() != nvars) throw Error("polynomial variable count mismatch");
    if (!p.is_homogeneous() || (!p.is_zero() && p.degree() != static_cast<int>(degree))) {
      throw Error("coefficient_rank: polynomial is not homogeneous of degree " + std::to_string(degree));
    }
  }
  const auto basis = monomials_of_degree(nvars, degree);
  Matrix coeffs(polys.size(), basis.size(), f);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) coeffs(i, j) = polys[i].coefficient(basis[j]);
  return rank(coeffs);
}

}  // namespace glab
