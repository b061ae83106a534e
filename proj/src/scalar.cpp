#include "glab/scalar.hpp"

#include <array>

namespace glab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

static_assert(sizeof(unsigned long) == sizeof(u64));

u64 reduce(const mpz_class& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

}  // namespace

// Deterministic Miller-Rabin; this witness set is exact for all n < 2^64.
bool is_prime_number(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(u64 p) {
  if (p <= 2 || p >= (1ULL << 63U) || !is_prime_number(p)) {
    throw Error("invalid prime modulus " + std::to_string(p));
  }
  return Field(Kind::Prime, p);
}

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

Scalar::Scalar(long v, Field f) {
  if (f.is_rational()) {
    value_ = mpq_class(v);
  } else {
    const u64 p = f.modulus();
    const long long m = static_cast<long long>(v % static_cast<long long>(p));
    value_ = Residue{m < 0 ? static_cast<u64>(m + static_cast<long long>(p)) : static_cast<u64>(m), p};
  }
}

Scalar::Scalar(const mpq_class& q, Field f) {
  if (f.is_rational()) {
    value_ = q;
    std::get<mpq_class>(value_).canonicalize();
    return;
  }
  const u64 p = f.modulus();
  const u64 den = reduce(q.get_den(), p);
  if (den == 0) throw Error("denominator vanishes in " + f.name());
  value_ = Residue{mul_mod(reduce(q.get_num(), p), pow_mod(den, p - 2, p), p), p};
}

Scalar Scalar::parse(std::string_view text, Field f) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw Error("cannot parse scalar '" + std::string(text) + "'");
  }
  q.canonicalize();
  return Scalar(q, f);
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Field(Field::Kind::Prime, r->p);
  return Field::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->v == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->v == 1;
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw Error("scalar is not rational");
}

u64 Scalar::residue() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->v;
  throw Error("scalar is not a prime-field residue");
}

void Scalar::require_same_field(const Scalar& o) const {
  if (value_.index() != o.value_.index()) throw FieldMismatch();
  if (const auto* r = std::get_if<Residue>(&value_)) {
    if (r->p != std::get<Residue>(o.value_).p) throw FieldMismatch();
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (const auto* r = std::get_if<Residue>(&value_)) return Scalar(Residue{pow_mod(r->v, r->p - 2, r->p), r->p});
  mpq_class inv = 1 / std::get<mpq_class>(value_);
  Scalar out;
  out.value_ = inv;
  return out;
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Scalar(Residue{r->v == 0 ? 0 : r->p - r->v, r->p});
  Scalar out;
  out.value_ = mpq_class(-std::get<mpq_class>(value_));
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    const u64 s = r->v + std::get<Residue>(o.value_).v;
    r->v = s >= r->p ? s - r->p : s;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    const u64 b = std::get<Residue>(o.value_).v;
    r->v = r->v >= b ? r->v - b : r->v + (r->p - b);
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->v = mul_mod(r->v, std::get<Residue>(o.value_).v, r->p);
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) return r->v == std::get<Scalar::Residue>(b.value_).v;
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->v);
  return std::get<mpq_class>(value_).get_str();
}

}  // namespace glab
