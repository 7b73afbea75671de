#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tcr/curve.hpp"
#include "tcr/divisor.hpp"
#include "tcr/poly.hpp"

namespace tcr {

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegreeGuard : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Element (A(x) + B(x) y) / C(x) of the function field of the curve.
// Canonical: gcd(A, B, C) = 1 and C monic; the zero function is 0/1.
class FnElement {
 public:
  FnElement(const Curve& curve, Poly a, Poly b, Poly c);
  static FnElement constant(const Curve& curve, const Scalar& s);
  static FnElement x(const Curve& curve);
  static FnElement y(const Curve& curve);

  const Curve& curve() const { return curve_; }
  const Poly& a() const { return a_; }
  const Poly& b() const { return b_; }
  const Poly& c() const { return c_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  FnElement operator+(const FnElement& o) const;
  FnElement operator-(const FnElement& o) const;
  FnElement operator*(const FnElement& o) const;
  FnElement operator*(const Scalar& s) const;
  FnElement operator-() const;
  FnElement inverse() const;
  FnElement operator/(const FnElement& o) const { return *this * o.inverse(); }
  bool operator==(const FnElement& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }
  bool operator!=(const FnElement& o) const { return !(*this == o); }

  // value at P; PoleError when P is a pole
  Scalar operator()(const Point& p) const;
  std::string to_string() const;

 private:
  FnElement(const Curve& curve, Poly a, Poly b, Poly c, bool normalized);
  void normalize();
  Curve curve_;
  Poly a_, b_, c_;
};

// x - x_P at an ordinary point, y - y_P at a point with 2P = O
struct LocalParam {
  bool ramified = false;
  Series x;
  Series y;
};

LocalParam local_param(const Curve& c, const Point& p, std::size_t prec);

// order of a polynomial in x at P (twice the root multiplicity at ramified points)
long poly_valuation(const Curve& c, const Poly& h, const Point& p);
// order of A + B y at P
long numerator_valuation(const Curve& c, const Poly& a, const Poly& b, const Point& p);
long valuation(const FnElement& f, const Point& p);

// sum of v_P(f) P over the given points
Divisor divisor_on(const FnElement& f, const std::vector<Point>& points);

// f o tau^k
FnElement pullback(const FnElement& f, const Translation& tr, long k);

// Basis of L(D) = {f : div f + D >= 0}, all elements sharing the denominator h.
struct RRSpace {
  Divisor divisor;
  Poly h{Field::rationals()};
  std::vector<std::pair<Poly, Poly>> numerators;  // (A_i, B_i)
  std::vector<FnElement> basis;
  std::size_t dim() const { return basis.size(); }
};

// valid for every degree; the dimension is checked against Riemann-Roch
RRSpace riemann_roch_space(const Curve& c, const Divisor& d);
// the operation proper: rejects deg D <= 0
RRSpace rr_basis(const Curve& c, const Divisor& d);

// f in L(D), decided from the denominator and valuations at every possible pole or forced zero
bool certify_membership(const FnElement& f, const Divisor& d);

}  // namespace tcr
