#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace tcr {

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Scalar;

// Either Q (characteristic 0) or F_p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);
  // "Q" or "Fp:<prime>"
  static Field parse(const std::string& spec);

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_mpq(const mpq_class& q) const;
  // accepts "a", "-a", "a/b"
  Scalar parse_element(const std::string& text) const;

  std::string name() const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  friend class Scalar;
  std::uint64_t p_;
};

class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}
  explicit Scalar(const mpq_class& q) : v_(q) {}
  Scalar(std::uint64_t residue, std::uint64_t p) : v_(Mod{residue % p, p}) {}

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inverse() const;
  Scalar pow(unsigned long e) const;

  // a -= b*c without temporaries where possible
  void submul(const Scalar& b, const Scalar& c);

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // total order used for canonical sorting (not a field order)
  bool canonical_less(const Scalar& o) const;

  bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::uint64_t residue() const { return std::get<Mod>(v_).v; }

  // rationals: true when denominator is 1
  bool is_integral() const;
  std::string to_string() const;

 private:
  struct Mod {
    std::uint64_t v;
    std::uint64_t p;
  };
  void check_same(const Scalar& o) const;
  std::variant<mpq_class, Mod> v_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime(std::uint64_t n);

}  // namespace tcr
