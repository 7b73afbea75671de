#include "tcr/curve.hpp"

#include <stdexcept>

namespace tcr {

bool Point::operator==(const Point& o) const {
  if (inf || o.inf) return inf == o.inf;
  return x == o.x && y == o.y;
}

std::string Point::to_string() const {
  if (inf) return "Oinf";
  return "(" + x.to_string() + "," + y.to_string() + ")";
}

bool PointLess::operator()(const Point& a, const Point& b) const {
  if (a.inf || b.inf) return a.inf && !b.inf;
  if (a.x != b.x) return a.x.canonical_less(b.x);
  return a.y.canonical_less(b.y);
}

Curve::Curve(Field f, Scalar a1, Scalar a2, Scalar a3, Scalar a4, Scalar a6)
    : field_(f), a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
  for (const Scalar* s : {&a1_, &a2_, &a3_, &a4_, &a6_}) {
    if (s->field() != f) throw FieldMismatch("curve coefficient from another field");
  }
  if (discriminant().is_zero()) throw std::invalid_argument("singular Weierstrass equation (discriminant 0)");
}

Scalar Curve::discriminant() const {
  auto c = [&](long v) { return field_.from_int(v); };
  Scalar b2 = a1_ * a1_ + c(4) * a2_;
  Scalar b4 = c(2) * a4_ + a1_ * a3_;
  Scalar b6 = a3_ * a3_ + c(4) * a6_;
  Scalar b8 = a1_ * a1_ * a6_ + c(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
  return -b2 * b2 * b8 - c(8) * b4 * b4 * b4 - c(27) * b6 * b6 + c(9) * b2 * b4 * b6;
}

bool Curve::contains(const Point& p) const {
  if (p.inf) return true;
  if (p.x.field() != field_ || p.y.field() != field_) return false;
  Scalar lhs = p.y * p.y + a1_ * p.x * p.y + a3_ * p.y;
  Scalar rhs = ((p.x + a2_) * p.x + a4_) * p.x + a6_;
  return lhs == rhs;
}

Point Curve::point(const Scalar& x, const Scalar& y) const {
  Point p = Point::affine(x, y);
  if (!contains(p)) throw std::invalid_argument("point " + p.to_string() + " is not on the curve");
  return p;
}

Point Curve::neg(const Point& p) const {
  if (p.inf) return p;
  return Point::affine(p.x, -p.y - a1_ * p.x - a3_);
}

bool Curve::is_two_torsion(const Point& p) const {
  if (p.inf) return false;
  return (p.y + p.y + a1_ * p.x + a3_).is_zero();
}

Point Curve::add(const Point& p, const Point& q) const {
  if (!contains(p) || !contains(q)) throw std::invalid_argument("group_add: point off the curve");
  if (p.inf) return q;
  if (q.inf) return p;
  Scalar lambda, nu;
  if (p.x == q.x) {
    if (p.y + q.y + a1_ * q.x + a3_ == field_.zero()) return Point::infinity();
    auto c = [&](long v) { return field_.from_int(v); };
    Scalar num = c(3) * p.x * p.x + c(2) * a2_ * p.x + a4_ - a1_ * p.y;
    Scalar den = c(2) * p.y + a1_ * p.x + a3_;
    lambda = num / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  nu = p.y - lambda * p.x;
  Scalar x3 = lambda * lambda + a1_ * lambda - a2_ - p.x - q.x;
  Scalar y3 = -(lambda + a1_) * x3 - nu - a3_;
  return Point::affine(x3, y3);
}

Point Curve::mul(long k, const Point& p) const {
  Point base = k < 0 ? neg(p) : p;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  Point r = Point::infinity();
  while (e) {
    if (e & 1) r = add(r, base);
    e >>= 1;
    if (e) base = add(base, base);
  }
  return r;
}

bool Curve::operator==(const Curve& o) const {
  return field_ == o.field_ && a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
}

Translation::Translation(Curve curve, Point alpha, int order_guard)
    : curve_(std::move(curve)), alpha_(std::move(alpha)), guard_(order_guard) {
  if (!curve_.contains(alpha_)) throw std::invalid_argument("translation point is not on the curve");
  if (alpha_.inf) throw std::invalid_argument("translation by O is the identity");
  if (guard_ < 2) throw std::invalid_argument("order guard must be at least 2");
  if (curve_.field().is_rational()) {
    multiples_.assign(2 * guard_ + 1, Point::infinity());
    Point acc = Point::infinity();
    for (int n = 1; n <= guard_; ++n) {
      acc = curve_.add(acc, alpha_);
      if (acc.inf) throw std::invalid_argument("alpha has finite order " + std::to_string(n) + " within the guard");
      multiples_[guard_ + n] = acc;
      multiples_[guard_ - n] = curve_.neg(acc);
      // torsion points on an integral model have x in (1/4)Z
      bool integral_model = true;
      for (const Scalar* s : {&curve_.a1(), &curve_.a2(), &curve_.a3(), &curve_.a4(), &curve_.a6()}) {
        integral_model = integral_model && s->is_integral();
      }
      if (integral_model && !(acc.x * curve_.field().from_int(4)).is_integral()) non_torsion_certified_ = true;
    }
    window_ = guard_ / 2;
  } else {
    Point acc = alpha_;
    long n = 1;
    std::vector<Point> pos{Point::infinity()};
    while (!acc.inf) {
      pos.push_back(acc);
      acc = curve_.add(acc, alpha_);
      ++n;
      if (n > 4 * static_cast<long>(curve_.field().characteristic()) + 8) throw std::logic_error("order computation diverged");
    }
    order_ = n;
    guard_ = static_cast<int>(n - 1);
    window_ = static_cast<int>((n - 1) / 2);
    multiples_.assign(2 * window_ + 1, Point::infinity());
    for (int k = -window_; k <= window_; ++k) multiples_[k + window_] = pos[((k % n) + n) % n];
    non_torsion_certified_ = false;
  }
  const int half = static_cast<int>(multiples_.size() / 2);
  for (int k = -window_; k <= window_; ++k) index_of_.emplace(multiples_[k + half], k);
}

void Translation::check_window(long k) const {
  if (k > window_ || k < -window_) {
    throw WindowExceeded("tau index " + std::to_string(k) + " exceeds the translation window +-" + std::to_string(window_));
  }
}

Point Translation::multiple(long k) const {
  check_window(k);
  return multiples_[k + static_cast<long>(multiples_.size() / 2)];
}

Point Translation::tau_pow(const Point& p, long k) const {
  if (k == 0) return p;
  return curve_.add(p, multiple(k));
}

std::optional<long> Translation::orbit_shift(const Point& p, const Point& q, long window) const {
  if (window > window_) throw WindowExceeded("orbit window " + std::to_string(window) + " exceeds half the order guard");
  Point d = curve_.sub(q, p);
  auto it = index_of_.find(d);
  if (it == index_of_.end()) return std::nullopt;
  long k = it->second;
  if (k > window || k < -window) return std::nullopt;
  return k;
}

}  // namespace tcr
