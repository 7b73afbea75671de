#pragma once

#include <string>
#include <vector>

#include "tcr/field.hpp"

namespace tcr {

// Dense univariate polynomial; coefficient i multiplies x^i. The zero polynomial has no coefficients.
class Poly {
 public:
  explicit Poly(Field f) : field_(f) {}
  Poly(Field f, std::vector<Scalar> coeffs);
  static Poly constant(const Scalar& c);
  static Poly x(Field f);
  // x - c
  static Poly linear_root(const Scalar& c);

  Field field() const { return field_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(long i) const;
  Scalar lead() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Scalar& s) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Scalar eval(const Scalar& x) const;
  // quotient and remainder
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly pow(unsigned long e) const;
  // multiplicity of c as a root
  long root_multiplicity(const Scalar& c) const;
  std::string to_string() const;

 private:
  void trim();
  Field field_;
  std::vector<Scalar> c_;
};

Poly gcd(Poly a, Poly b);

// Truncated power series: coefficients of u^0 .. u^(prec-1).
struct Series {
  std::vector<Scalar> c;

  std::size_t prec() const { return c.size(); }
  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;  // truncated to the smaller precision
  Series scaled(const Scalar& s) const;
  // index of the first nonzero coefficient, or prec() if none
  std::size_t order() const;
};

Series series_const(const Scalar& s, std::size_t prec);
// p(s(u)) by Horner
Series compose(const Poly& p, const Series& s);

}  // namespace tcr
