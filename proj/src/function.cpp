#include "tcr/function.hpp"

#include <algorithm>
#include <map>

#include "tcr/linalg.hpp"

namespace tcr {

namespace {

// x^3 + a2 x^2 + a4 x + a6
Poly weierstrass_rhs(const Curve& c) {
  Field f = c.field();
  return Poly(f, {c.a6(), c.a4(), c.a2(), f.one()});
}

// a1 x + a3
Poly weierstrass_linear(const Curve& c) { return Poly(c.field(), {c.a3(), c.a1()}); }

long pole_order_at_infinity(const Poly& a, const Poly& b) {
  long n = -1;
  if (!a.is_zero()) n = std::max(n, 2 * a.degree());
  if (!b.is_zero()) n = std::max(n, 2 * b.degree() + 3);
  return n;
}

struct ScalarLess {
  bool operator()(const Scalar& a, const Scalar& b) const { return a.canonical_less(b); }
};

}  // namespace

FnElement::FnElement(const Curve& curve, Poly a, Poly b, Poly c)
    : curve_(curve), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  normalize();
}

FnElement::FnElement(const Curve& curve, Poly a, Poly b, Poly c, bool normalized)
    : curve_(curve), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (!normalized) normalize();
}

FnElement FnElement::constant(const Curve& curve, const Scalar& s) {
  Field f = curve.field();
  return FnElement(curve, Poly::constant(s), Poly(f), Poly::constant(f.one()));
}

FnElement FnElement::x(const Curve& curve) {
  Field f = curve.field();
  return FnElement(curve, Poly::x(f), Poly(f), Poly::constant(f.one()), true);
}

FnElement FnElement::y(const Curve& curve) {
  Field f = curve.field();
  return FnElement(curve, Poly(f), Poly::constant(f.one()), Poly::constant(f.one()), true);
}

void FnElement::normalize() {
  Field f = curve_.field();
  if (c_.is_zero()) throw std::domain_error("function with zero denominator");
  if (a_.is_zero() && b_.is_zero()) {
    c_ = Poly::constant(f.one());
    return;
  }
  if (c_.degree() > 0) {
    Poly g = gcd(gcd(a_, b_), c_);
    if (g.degree() > 0) {
      a_ = a_.divmod(g).first;
      b_ = b_.divmod(g).first;
      c_ = c_.divmod(g).first;
    }
  }
  if (!c_.lead().is_one()) {
    Scalar l = c_.lead().inverse();
    a_ = a_ * l;
    b_ = b_ * l;
    c_ = c_ * l;
  }
}

FnElement FnElement::operator+(const FnElement& o) const {
  if (c_ == o.c_) return FnElement(curve_, a_ + o.a_, b_ + o.b_, c_);
  return FnElement(curve_, a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_);
}

FnElement FnElement::operator-() const { return FnElement(curve_, -a_, -b_, c_, true); }

FnElement FnElement::operator-(const FnElement& o) const { return *this + (-o); }

FnElement FnElement::operator*(const Scalar& s) const {
  if (s.is_zero()) return constant(curve_, s);
  return FnElement(curve_, a_ * s, b_ * s, c_, true);
}

FnElement FnElement::operator*(const FnElement& o) const {
  Poly bb = b_ * o.b_;
  Poly a = a_ * o.a_ + bb * weierstrass_rhs(curve_);
  Poly b = a_ * o.b_ + o.a_ * b_ - bb * weierstrass_linear(curve_);
  return FnElement(curve_, std::move(a), std::move(b), c_ * o.c_);
}

FnElement FnElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of the zero function");
  Poly lin = weierstrass_linear(curve_);
  Poly norm = a_ * a_ - a_ * b_ * lin - b_ * b_ * weierstrass_rhs(curve_);
  return FnElement(curve_, c_ * (a_ - b_ * lin), -(c_ * b_), norm);
}

Scalar FnElement::operator()(const Point& p) const {
  Field f = curve_.field();
  if (is_zero()) return f.zero();
  if (p.inf) {
    long v = 2 * c_.degree() - pole_order_at_infinity(a_, b_);
    if (v < 0) throw PoleError("pole at Oinf");
    if (v > 0) return f.zero();
    return a_.lead() / c_.lead();
  }
  Scalar cv = c_.eval(p.x);
  if (!cv.is_zero()) return (a_.eval(p.x) + b_.eval(p.x) * p.y) / cv;
  const long vc = poly_valuation(curve_, c_, p);
  LocalParam lp = local_param(curve_, p, static_cast<std::size_t>(vc) + 1);
  Series num = compose(a_, lp.x) + compose(b_, lp.x) * lp.y;
  Series den = compose(c_, lp.x);
  const long on = static_cast<long>(num.order());
  if (on < vc) throw PoleError("pole at " + p.to_string());
  if (on > vc) return f.zero();
  return num.c[static_cast<std::size_t>(vc)] / den.c[static_cast<std::size_t>(vc)];
}

std::string FnElement::to_string() const {
  return "((" + a_.to_string() + ") + (" + b_.to_string() + ")*y) / (" + c_.to_string() + ")";
}

LocalParam local_param(const Curve& c, const Point& p, std::size_t prec) {
  if (p.inf) throw std::invalid_argument("local_param: affine point expected");
  Field f = c.field();
  LocalParam lp;
  lp.ramified = c.is_two_torsion(p);
  if (prec == 0) return lp;
  Series t = series_const(f.zero(), prec);
  if (prec > 1) t.c[1] = f.one();
  if (!lp.ramified) {
    lp.x = t + series_const(p.x, prec);
    Series rhs = compose(weierstrass_rhs(c), lp.x);
    std::vector<Scalar> y(prec, f.zero());
    y[0] = p.y;
    const Scalar denom_inv = (p.y + p.y + c.a1() * p.x + c.a3()).inverse();
    for (std::size_t k = 1; k < prec; ++k) {
      Scalar s = rhs.c[k] - c.a1() * y[k - 1];
      for (std::size_t i = 1; i < k; ++i) s.submul(y[i], y[k - i]);
      y[k] = s * denom_inv;
    }
    lp.y.c = std::move(y);
    return lp;
  }
  // t = y - y0 and x = x0 + w(t) with g w = t^2 + a1 t w - f2 w^2 - w^3
  lp.y = t + series_const(p.y, prec);
  const Scalar f1 = f.from_int(3) * p.x * p.x + f.from_int(2) * c.a2() * p.x + c.a4();
  const Scalar g_inv = (f1 - c.a1() * p.y).inverse();
  const Scalar f2 = f.from_int(3) * p.x + c.a2();
  Series w = series_const(f.zero(), prec);
  const Series tt = t * t;
  for (std::size_t it = 0; it < prec; ++it) {
    Series ww = w * w;
    w = (tt + (t * w).scaled(c.a1()) - ww.scaled(f2) - ww * w).scaled(g_inv);
  }
  lp.x = w + series_const(p.x, prec);
  return lp;
}

long poly_valuation(const Curve& c, const Poly& h, const Point& p) {
  if (h.is_zero()) throw std::domain_error("valuation of the zero polynomial");
  if (p.inf) return -2 * h.degree();
  const long m = h.root_multiplicity(p.x);
  return c.is_two_torsion(p) ? 2 * m : m;
}

long numerator_valuation(const Curve& c, const Poly& a, const Poly& b, const Point& p) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("valuation of the zero function");
  const long total = pole_order_at_infinity(a, b);
  if (p.inf) return -total;
  // A + By has exactly `total` zeros on the affine part, so total + 1 terms always suffice
  std::size_t prec = std::min<std::size_t>(8, static_cast<std::size_t>(total) + 1);
  for (;;) {
    LocalParam lp = local_param(c, p, prec);
    Series s = compose(a, lp.x) + compose(b, lp.x) * lp.y;
    const std::size_t o = s.order();
    if (o < prec) return static_cast<long>(o);
    if (prec > static_cast<std::size_t>(total)) throw std::logic_error("valuation: expansion did not terminate");
    prec = std::min<std::size_t>(2 * prec, static_cast<std::size_t>(total) + 1);
  }
}

long valuation(const FnElement& f, const Point& p) {
  if (f.is_zero()) throw std::domain_error("valuation of the zero function");
  return numerator_valuation(f.curve(), f.a(), f.b(), p) - poly_valuation(f.curve(), f.c(), p);
}

Divisor divisor_on(const FnElement& f, const std::vector<Point>& points) {
  Divisor d;
  for (const auto& p : points) d.add(p, valuation(f, p));
  return d;
}

namespace {

FnElement horner(const Poly& p, const FnElement& x) {
  const Curve& c = x.curve();
  FnElement r = FnElement::constant(c, c.field().zero());
  for (long i = p.degree(); i >= 0; --i) r = r * x + FnElement::constant(c, p.coeff(i));
  return r;
}

}  // namespace

FnElement pullback(const FnElement& f, const Translation& tr, long k) {
  const Curve& c = tr.curve();
  Point q = tr.tau_pow(Point::infinity(), k);
  if (q.inf) return f;
  auto k_ = [&](const Scalar& s) { return FnElement::constant(c, s); };
  FnElement x = FnElement::x(c);
  FnElement y = FnElement::y(c);
  FnElement lambda = (y - k_(q.y)) / (x - k_(q.x));
  FnElement nu = y - lambda * x;
  FnElement x3 = lambda * lambda + lambda * c.a1() - k_(c.a2()) - x - k_(q.x);
  FnElement y3 = -((lambda + k_(c.a1())) * x3) - nu - k_(c.a3());
  return (horner(f.a(), x3) + horner(f.b(), x3) * y3) / horner(f.c(), x3);
}

RRSpace riemann_roch_space(const Curve& c, const Divisor& d) {
  Field f = c.field();
  RRSpace out;
  out.divisor = d;

  struct Fiber {
    Point p;
    Point np;
    bool ramified;
    long e;
  };
  std::vector<Fiber> fibers;
  std::map<Scalar, bool, ScalarLess> seen;
  long two_e = 0;
  for (const auto& [p, mult] : d.terms()) {
    if (p.inf || seen.count(p.x)) continue;
    seen[p.x] = true;
    Fiber fb{p, c.neg(p), c.is_two_torsion(p), 0};
    if (fb.ramified) {
      fb.e = std::max(0L, (d[p] + 1) / 2);
    } else {
      fb.e = std::max({0L, d[p], d[fb.np]});
    }
    two_e += 2 * fb.e;
    fibers.push_back(fb);
  }
  Poly h = Poly::constant(f.one());
  for (const auto& fb : fibers) {
    if (fb.e > 0) h = h * Poly::linear_root(fb.p.x).pow(static_cast<unsigned long>(fb.e));
  }
  out.h = h;
  const long n = d[Point::infinity()] + two_e;
  const long expected = h0(c, d);
  if (n < 0) {
    if (expected != 0) throw std::logic_error("riemann_roch_space: negative bound with nonzero h0");
    return out;
  }

  // monomials x^i (2i <= n) then x^i y (2i + 3 <= n)
  const long nx = n / 2 + 1;
  const long ny = n >= 3 ? (n - 3) / 2 + 1 : 0;
  const std::size_t nmono = static_cast<std::size_t>(nx + ny);

  Matrix cond(f, nmono);
  for (const auto& fb : fibers) {
    std::vector<Point> pts{fb.p};
    if (!fb.ramified) pts.push_back(fb.np);
    for (const auto& pt : pts) {
      const long r = fb.e * (fb.ramified ? 2 : 1) - d[pt];
      if (r <= 0) continue;
      const auto prec = static_cast<std::size_t>(r);
      LocalParam lp = local_param(c, pt, prec);
      std::vector<Series> mono;
      mono.reserve(nmono);
      Series pw = series_const(f.one(), prec);
      std::vector<Series> xp;
      for (long i = 0; i < std::max(nx, ny); ++i) {
        xp.push_back(pw);
        pw = pw * lp.x;
      }
      for (long i = 0; i < nx; ++i) mono.push_back(xp[static_cast<std::size_t>(i)]);
      for (long i = 0; i < ny; ++i) mono.push_back(xp[static_cast<std::size_t>(i)] * lp.y);
      for (std::size_t t = 0; t < prec; ++t) {
        Vec row;
        row.reserve(nmono);
        for (const auto& s : mono) row.push_back(s.c[t]);
        cond.rows.push_back(std::move(row));
      }
    }
  }
  Subspace ker = cond.rows.empty() ? Subspace::full(f, nmono) : kernel(cond);
  for (const auto& v : ker.basis()) {
    std::vector<Scalar> ac(v.begin(), v.begin() + nx);
    std::vector<Scalar> bc(v.begin() + nx, v.end());
    Poly a(f, std::move(ac));
    Poly b(f, std::move(bc));
    out.basis.emplace_back(c, a, b, h);
    out.numerators.emplace_back(std::move(a), std::move(b));
  }
  if (static_cast<long>(out.dim()) != expected) {
    throw std::logic_error("riemann_roch_space: dimension " + std::to_string(out.dim()) + " but Riemann-Roch gives " +
                           std::to_string(expected) + " for " + d.to_string());
  }
  return out;
}

RRSpace rr_basis(const Curve& c, const Divisor& d) {
  if (d.degree() <= 0) throw DegreeGuard("rr_basis: degree " + std::to_string(d.degree()) + " must be at least 1");
  return riemann_roch_space(c, d);
}

bool certify_membership(const FnElement& f, const Divisor& d) {
  if (f.is_zero()) return true;
  const Curve& c = f.curve();
  Poly rest = f.c();
  std::vector<Point> check{Point::infinity()};
  std::map<Scalar, bool, ScalarLess> seen;
  for (const auto& [p, m] : d.terms()) {
    if (p.inf || seen.count(p.x)) continue;
    seen[p.x] = true;
    check.push_back(p);
    Point np = c.neg(p);
    if (np != p) check.push_back(np);
    const long mult = rest.root_multiplicity(p.x);
    if (mult > 0) rest = rest.divmod(Poly::linear_root(p.x).pow(static_cast<unsigned long>(mult))).first;
  }
  if (rest.degree() > 0) return false;  // a pole away from supp D
  for (const auto& p : check) {
    if (valuation(f, p) + d[p] < 0) return false;
  }
  return true;
}

}  // namespace tcr
