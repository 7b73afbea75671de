#include "tcr/divisor.hpp"

#include <algorithm>

namespace tcr {

Divisor Divisor::point(const Point& p, long mult) {
  Divisor d;
  d.add(p, mult);
  return d;
}

long Divisor::degree() const {
  long s = 0;
  for (const auto& [p, m] : terms_) s += m;
  return s;
}

long Divisor::operator[](const Point& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<Point> Divisor::support() const {
  std::vector<Point> out;
  for (const auto& [p, m] : terms_) out.push_back(p);
  return out;
}

bool Divisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

void Divisor::add(const Point& p, long mult) {
  if (mult == 0) return;
  auto [it, inserted] = terms_.emplace(p, mult);
  if (!inserted) {
    it->second += mult;
    if (it->second == 0) terms_.erase(it);
  }
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [p, m] : o.terms_) add(p, m);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [p, m] : o.terms_) add(p, -m);
  return *this;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  r += o;
  return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
  Divisor r = *this;
  r -= o;
  return r;
}

Divisor Divisor::operator-() const { return *this * -1; }

Divisor Divisor::operator*(long k) const {
  Divisor r;
  if (k == 0) return r;
  for (const auto& [p, m] : terms_) r.terms_.emplace(p, m * k);
  return r;
}

bool Divisor::operator==(const Divisor& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b) {
    if (a->second != b->second || a->first != b->first) return false;
  }
  return true;
}

bool Divisor::leq(const Divisor& o) const {
  for (const auto& [p, m] : terms_) {
    if (m > o[p]) return false;
  }
  for (const auto& [p, m] : o.terms_) {
    if (m < (*this)[p]) return false;
  }
  return true;
}

std::string Divisor::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [p, m] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(m) + "*" + p.to_string();
  }
  return s;
}

Divisor dmin(const Divisor& a, const Divisor& b) {
  Divisor r;
  for (const auto& [p, m] : a.terms()) r.add(p, std::min(m, b[p]));
  for (const auto& [p, m] : b.terms()) {
    if (a[p] == 0) r.add(p, std::min(m, 0L));
  }
  return r;
}

Divisor dmax(const Divisor& a, const Divisor& b) {
  Divisor r;
  for (const auto& [p, m] : a.terms()) r.add(p, std::max(m, b[p]));
  for (const auto& [p, m] : b.terms()) {
    if (a[p] == 0) r.add(p, std::max(m, 0L));
  }
  return r;
}

Divisor positive_part(const Divisor& a) {
  Divisor r;
  for (const auto& [p, m] : a.terms()) {
    if (m > 0) r.add(p, m);
  }
  return r;
}

Divisor tau_act(const Translation& tr, const Divisor& d, long k) {
  if (k == 0) return d;
  Divisor r;
  for (const auto& [p, m] : d.terms()) r.add(tr.tau_pow(p, k), m);
  return r;
}

Divisor partial_sum(const Translation& tr, const Divisor& d, long n) {
  Divisor r;
  for (long i = 0; i < n; ++i) r += tau_act(tr, d, -i);
  return r;
}

DivisorClass class_of(const Curve& c, const Divisor& d) {
  DivisorClass cl;
  cl.degree = d.degree();
  cl.pointsum = Point::infinity();
  for (const auto& [p, m] : d.terms()) cl.pointsum = c.add(cl.pointsum, c.mul(m, p));
  return cl;
}

bool lin_equiv(const Curve& c, const Divisor& a, const Divisor& b) { return class_of(c, a) == class_of(c, b); }

long h0(const Curve& c, const Divisor& d) {
  long deg = d.degree();
  if (deg >= 1) return deg;
  if (deg < 0) return 0;
  return class_of(c, d).pointsum.inf ? 1 : 0;
}

std::vector<OrbitPart> split_orbits(const Translation& tr, const std::vector<Divisor>& ds, long window) {
  std::vector<OrbitPart> parts;
  auto place = [&](const Point& p, long m) {
    for (auto& part : parts) {
      if (auto k = tr.orbit_shift(part.base, p, window)) {
        part.mult[*k] += m;
        return;
      }
    }
    OrbitPart fresh{p, {}};
    fresh.mult[0] = m;
    parts.push_back(std::move(fresh));
  };
  for (const auto& d : ds) {
    for (const auto& [p, m] : d.terms()) place(p, m);
  }
  for (auto& part : parts) {
    std::map<long, long> cleaned;
    for (auto [k, m] : part.mult) {
      if (m != 0) cleaned[k] = m;
    }
    long lo = cleaned.empty() ? 0 : cleaned.begin()->first;
    if (lo != 0) part.base = tr.tau_pow(part.base, lo);
    part.mult.clear();
    for (auto [k, m] : cleaned) part.mult[k - lo] = m;
  }
  return parts;
}

std::vector<OrbitPart> split_orbits(const Translation& tr, const Divisor& d, long window) {
  return split_orbits(tr, std::vector<Divisor>{d}, window);
}

}  // namespace tcr
