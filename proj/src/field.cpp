#include "tcr/field.hpp"

namespace tcr {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic is not prime: " + std::to_string(p));
  if (p >= (1ull << 62)) throw std::invalid_argument("prime too large");
  return Field(p);
}

Field Field::parse(const std::string& spec) {
  if (spec == "Q" || spec == "QQ") return rationals();
  if (spec.rfind("Fp:", 0) == 0) {
    std::size_t pos = 0;
    auto p = std::stoull(spec.substr(3), &pos);
    if (pos != spec.size() - 3) throw std::invalid_argument("bad field spec: " + spec);
    return prime(p);
  }
  throw std::invalid_argument("bad field spec: " + spec);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const {
  if (p_ == 0) return Scalar(mpq_class(v));
  long r = v % static_cast<long>(p_);
  if (r < 0) r += static_cast<long>(p_);
  return Scalar(static_cast<std::uint64_t>(r), p_);
}

Scalar Field::from_mpq(const mpq_class& q) const {
  if (p_ == 0) return Scalar(q);
  mpz_class pz(std::to_string(p_));
  mpz_class n = q.get_num() % pz;
  if (n < 0) n += pz;
  mpz_class d = q.get_den() % pz;
  if (d == 0) throw std::domain_error("rational not defined modulo " + std::to_string(p_));
  Scalar num(std::stoull(n.get_str()), p_);
  Scalar den(std::stoull(d.get_str()), p_);
  return num / den;
}

Scalar Field::parse_element(const std::string& text) const {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad field element: '" + text + "'");
  q.canonicalize();
  return from_mpq(q);
}

Field Scalar::field() const {
  if (auto* m = std::get_if<Mod>(&v_)) return Field(m->p);
  return Field::rationals();
}

void Scalar::check_same(const Scalar& o) const {
  if (v_.index() != o.v_.index()) throw FieldMismatch("mixed-field arithmetic");
  if (auto* m = std::get_if<Mod>(&v_)) {
    if (m->p != std::get<Mod>(o.v_).p) throw FieldMismatch("mixed-field arithmetic");
  }
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
  return std::get<Mod>(v_).v == 0;
}

bool Scalar::is_one() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
  return std::get<Mod>(v_).v == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(*q + std::get<mpq_class>(o.v_)));
  const Mod& a = std::get<Mod>(v_);
  std::uint64_t s = a.v + std::get<Mod>(o.v_).v;
  if (s >= a.p) s -= a.p;
  return Scalar(s, a.p);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(*q - std::get<mpq_class>(o.v_)));
  const Mod& a = std::get<Mod>(v_);
  std::uint64_t b = std::get<Mod>(o.v_).v;
  return Scalar(a.v >= b ? a.v - b : a.v + a.p - b, a.p);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(*q * std::get<mpq_class>(o.v_)));
  const Mod& a = std::get<Mod>(v_);
  return Scalar(mulmod(a.v, std::get<Mod>(o.v_).v, a.p), a.p);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(1 / *q));
  const Mod& a = std::get<Mod>(v_);
  return Scalar(powmod(a.v, a.p - 2, a.p), a.p);
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same(o);
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(*q / std::get<mpq_class>(o.v_)));
  return *this * o.inverse();
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(-*q));
  const Mod& a = std::get<Mod>(v_);
  return Scalar(a.v == 0 ? 0 : a.p - a.v, a.p);
}

Scalar Scalar::pow(unsigned long e) const {
  Scalar r = field().one();
  Scalar b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

void Scalar::submul(const Scalar& b, const Scalar& c) {
  check_same(b);
  check_same(c);
  if (auto* q = std::get_if<mpq_class>(&v_)) {
    *q -= std::get<mpq_class>(b.v_) * std::get<mpq_class>(c.v_);
    return;
  }
  Mod& a = std::get<Mod>(v_);
  std::uint64_t t = mulmod(std::get<Mod>(b.v_).v, std::get<Mod>(c.v_).v, a.p);
  a.v = a.v >= t ? a.v - t : a.v + a.p - t;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q == std::get<mpq_class>(o.v_);
  return std::get<Mod>(v_).v == std::get<Mod>(o.v_).v;
}

bool Scalar::canonical_less(const Scalar& o) const {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q < std::get<mpq_class>(o.v_);
  return std::get<Mod>(v_).v < std::get<Mod>(o.v_).v;
}

bool Scalar::is_integral() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_den() == 1;
  return true;
}

std::string Scalar::to_string() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
  return std::to_string(std::get<Mod>(v_).v);
}

}  // namespace tcr
