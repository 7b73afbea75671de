#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcr/curve.hpp"

namespace tcr {

// Finite formal Z-combination of curve points.
class Divisor {
 public:
  using Terms = std::map<Point, long, PointLess>;

  Divisor() = default;
  static Divisor point(const Point& p, long mult = 1);

  long degree() const;
  long operator[](const Point& p) const;
  const Terms& terms() const { return terms_; }
  std::vector<Point> support() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_effective() const;

  void add(const Point& p, long mult);
  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator-() const;
  Divisor operator*(long k) const;
  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);

  bool operator==(const Divisor& o) const;
  bool operator!=(const Divisor& o) const { return !(*this == o); }
  // coordinatewise <=
  bool leq(const Divisor& o) const;

  std::string to_string() const;

 private:
  Terms terms_;
};

Divisor dmin(const Divisor& a, const Divisor& b);
Divisor dmax(const Divisor& a, const Divisor& b);
Divisor positive_part(const Divisor& a);

// tau^k applied pointwise; the divisor d^tau of the text is tau_act(d, -1)
Divisor tau_act(const Translation& tr, const Divisor& d, long k);
// d + tau_act(d,-1) + ... + tau_act(d,-(n-1)); zero for n <= 0
Divisor partial_sum(const Translation& tr, const Divisor& d, long n);

struct DivisorClass {
  long degree = 0;
  Point pointsum;
  bool operator==(const DivisorClass& o) const { return degree == o.degree && pointsum == o.pointsum; }
  bool operator!=(const DivisorClass& o) const { return !(*this == o); }
};

DivisorClass class_of(const Curve& c, const Divisor& d);
bool lin_equiv(const Curve& c, const Divisor& a, const Divisor& b);
// Riemann-Roch on a genus one curve
long h0(const Curve& c, const Divisor& d);

// A tau-orbit component of a divisor: the divisor equals sum_i mult[i] * tau^i(base).
struct OrbitPart {
  Point base;
  std::map<long, long> mult;
};

// Groups support points into orbits using orbit_shift within the window;
// points not within the window of an existing orbit start a new one.
// Each part is rebased so that its smallest index is 0.
std::vector<OrbitPart> split_orbits(const Translation& tr, const Divisor& d, long window);
std::vector<OrbitPart> split_orbits(const Translation& tr, const std::vector<Divisor>& ds, long window);

}  // namespace tcr
