#include "tcr/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcr {

Poly::Poly(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::x(Field f) { return Poly(f, {f.zero(), f.one()}); }

Poly Poly::linear_root(const Scalar& c) { return Poly(c.field(), {-c, c.field().one()}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(c_.size())) return field_.zero();
  return c_[static_cast<std::size_t>(i)];
}

Scalar Poly::lead() const { return c_.empty() ? field_.zero() : c_.back(); }

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& s : c_) r.push_back(-s);
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field_);
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
    }
  }
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Scalar& s) const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& a : c_) r.push_back(a * s);
  return Poly(field_, std::move(r));
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar r = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(field_), *this};
  std::vector<Scalar> rem = c_;
  std::vector<Scalar> q(c_.size() - d.c_.size() + 1, field_.zero());
  Scalar inv = d.lead().inverse();
  for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
    Scalar t = rem[static_cast<std::size_t>(i) + d.c_.size() - 1] * inv;
    q[static_cast<std::size_t>(i)] = t;
    if (t.is_zero()) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[static_cast<std::size_t>(i) + j].submul(t, d.c_[j]);
  }
  rem.resize(d.c_.size() - 1, field_.zero());
  return {Poly(field_, std::move(q)), Poly(field_, std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

Poly Poly::pow(unsigned long e) const {
  Poly r = constant(field_.one());
  Poly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

long Poly::root_multiplicity(const Scalar& c) const {
  if (is_zero()) throw std::domain_error("root multiplicity of the zero polynomial");
  long m = 0;
  Poly p = *this;
  Poly lin = linear_root(c);
  for (;;) {
    auto [q, r] = p.divmod(lin);
    if (!r.is_zero()) return m;
    ++m;
    p = q;
  }
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (long i = degree(); i >= 0; --i) {
    const Scalar& a = c_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + a.to_string() + ")";
    if (i >= 1) s += "*x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Series Series::operator+(const Series& o) const {
  Series r;
  const std::size_t n = std::min(prec(), o.prec());
  for (std::size_t i = 0; i < n; ++i) r.c.push_back(c[i] + o.c[i]);
  return r;
}

Series Series::operator-(const Series& o) const {
  Series r;
  const std::size_t n = std::min(prec(), o.prec());
  for (std::size_t i = 0; i < n; ++i) r.c.push_back(c[i] - o.c[i]);
  return r;
}

Series Series::operator*(const Series& o) const {
  const std::size_t n = std::min(prec(), o.prec());
  Series r;
  if (n == 0) return r;
  r.c.assign(n, c[0].field().zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (!o.c[j].is_zero()) r.c[i + j] += c[i] * o.c[j];
    }
  }
  return r;
}

Series Series::scaled(const Scalar& s) const {
  Series r;
  for (const auto& a : c) r.c.push_back(a * s);
  return r;
}

std::size_t Series::order() const {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_zero()) return i;
  }
  return c.size();
}

Series series_const(const Scalar& s, std::size_t prec) {
  Series r;
  r.c.assign(prec, s.field().zero());
  if (prec) r.c[0] = s;
  return r;
}

Series compose(const Poly& p, const Series& s) {
  Series r = series_const(p.field().zero(), s.prec());
  for (long i = p.degree(); i >= 0; --i) {
    r = r * s;
    if (r.prec()) r.c[0] += p.coeff(i);
  }
  return r;
}

}  // namespace tcr
