#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace glab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two operands live over different fields.
class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("field mismatch") {}
};

bool is_prime_number(std::uint64_t n);

/// Either the rationals or a prime field F_p with 2 < p < 2^63.
class Field {
 public:
  enum class Kind { Rationals, Prime };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  static Field prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rationals; }
  std::uint64_t modulus() const { return p_; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// Exact field element. Rationals are kept canonical (lowest terms, positive
/// denominator) by GMP; residues are kept in [0, p).
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(long v, Field f);
  Scalar(const mpq_class& q, Field f);

  static Scalar zero(Field f) { return Scalar(0L, f); }
  static Scalar one(Field f) { return Scalar(1L, f); }
  /// Parses "a", "-a" or "a/b".
  static Scalar parse(std::string_view text, Field f);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const;
  std::uint64_t residue() const;

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "3/7", "-2", or the residue in decimal.
  std::string to_string() const;

 private:
  struct Residue {
    std::uint64_t v;
    std::uint64_t p;
  };
  explicit Scalar(Residue r) : value_(r) {}
  void require_same_field(const Scalar& o) const;

  std::variant<mpq_class, Residue> value_;
};

}  // namespace glab
