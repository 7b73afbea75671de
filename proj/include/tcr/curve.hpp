#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcr/field.hpp"

namespace tcr {

struct Point {
  bool inf = true;
  Scalar x;
  Scalar y;

  static Point infinity() { return Point{}; }
  static Point affine(Scalar x, Scalar y) { return Point{false, std::move(x), std::move(y)}; }

  bool operator==(const Point& o) const;
  bool operator!=(const Point& o) const { return !(*this == o); }
  std::string to_string() const;
};

// canonical ordering for use as a map key
struct PointLess {
  bool operator()(const Point& a, const Point& b) const;
};

class WindowExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
class Curve {
 public:
  Curve(Field f, Scalar a1, Scalar a2, Scalar a3, Scalar a4, Scalar a6);

  Field field() const { return field_; }
  const Scalar& a1() const { return a1_; }
  const Scalar& a2() const { return a2_; }
  const Scalar& a3() const { return a3_; }
  const Scalar& a4() const { return a4_; }
  const Scalar& a6() const { return a6_; }
  Scalar discriminant() const;

  bool contains(const Point& p) const;
  Point point(const Scalar& x, const Scalar& y) const;  // validated
  Point neg(const Point& p) const;
  Point add(const Point& p, const Point& q) const;
  Point sub(const Point& p, const Point& q) const { return add(p, neg(q)); }
  Point mul(long k, const Point& p) const;
  // 2y + a1 x + a3 = 0
  bool is_two_torsion(const Point& p) const;

  bool operator==(const Curve& o) const;

 private:
  Field field_;
  Scalar a1_, a2_, a3_, a4_, a6_;
};

// tau(P) = P + alpha, with a verified window in which tau has no fixed points.
class Translation {
 public:
  // Over Q: checks [n]alpha != O for 1 <= n <= order_guard and runs an integrality screen.
  // Over F_p: computes the exact order of alpha; the guard becomes that order.
  Translation(Curve curve, Point alpha, int order_guard = 64);

  const Curve& curve() const { return curve_; }
  const Point& alpha() const { return alpha_; }
  int order_guard() const { return guard_; }
  // exact order of alpha over F_p
  std::optional<long> order() const { return order_; }
  // largest |k| accepted by tau_pow and orbit_shift
  int window() const { return window_; }
  bool screened_non_torsion() const { return non_torsion_certified_; }

  Point multiple(long k) const;  // [k]alpha, |k| <= guard
  Point tau_pow(const Point& p, long k) const;
  std::optional<long> orbit_shift(const Point& p, const Point& q, long window) const;
  std::optional<long> orbit_shift(const Point& p, const Point& q) const { return orbit_shift(p, q, window_); }

 private:
  void check_window(long k) const;
  Curve curve_;
  Point alpha_;
  int guard_;
  int window_;
  std::optional<long> order_;
  bool non_torsion_certified_ = false;
  std::vector<Point> multiples_;  // index k + guard_
  std::map<Point, long, PointLess> index_of_;
};

}  // namespace tcr
