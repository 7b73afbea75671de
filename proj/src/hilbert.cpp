#include "tcr/hilbert.hpp"

#include "tcr/function.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcr {

long binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void trim(std::vector<long>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

std::vector<long> one_minus_t_pow(int k) {
  std::vector<long> r{1};
  for (int i = 0; i < k; ++i) r = poly_mul(r, {1, -1});
  return r;
}

}  // namespace

HilbertSeries::HilbertSeries(std::vector<long> numerator, int pole) : num_(std::move(numerator)), pole_(pole) {
  if (pole < 0) throw std::invalid_argument("negative pole order");
  trim(num_);
}

HilbertSeries poly_series(std::vector<long> p) { return HilbertSeries(std::move(p), 0); }

HilbertSeries HilbertSeries::fit(const std::vector<long>& coeffs, int pole) {
  std::vector<long> prod = poly_mul(coeffs, one_minus_t_pow(pole));
  prod.resize(coeffs.size(), 0);  // only the first coeffs.size() terms are determined
  std::vector<long> num = prod;
  trim(num);
  // the top `pole + 1` determined coefficients must vanish for the fit to be unambiguous
  if (static_cast<long>(num.size()) + pole + 1 > static_cast<long>(coeffs.size())) {
    throw std::invalid_argument("HilbertSeries::fit: not enough coefficients");
  }
  return HilbertSeries(num, pole);
}

long HilbertSeries::coeff(long n) const {
  if (n < 0) return 0;
  long s = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const long m = n - static_cast<long>(i);
    if (m < 0) break;
    if (pole_ == 0) {
      if (m == 0) s += num_[i];
    } else {
      s += num_[i] * binom(m + pole_ - 1, pole_ - 1);
    }
  }
  return s;
}

std::vector<long> HilbertSeries::coeffs(long upto) const {
  std::vector<long> r;
  for (long n = 0; n <= upto; ++n) r.push_back(coeff(n));
  return r;
}

HilbertSeries HilbertSeries::raised(int pole) const {
  if (pole < pole_) throw std::logic_error("raised: lower pole");
  return HilbertSeries(poly_mul(num_, one_minus_t_pow(pole - pole_)), pole);
}

HilbertSeries HilbertSeries::operator+(const HilbertSeries& o) const {
  const int k = std::max(pole_, o.pole_);
  std::vector<long> a = raised(k).num_, b = o.raised(k).num_;
  a.resize(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return HilbertSeries(a, k);
}

HilbertSeries HilbertSeries::operator*(long c) const {
  std::vector<long> a = num_;
  for (auto& x : a) x *= c;
  return HilbertSeries(a, pole_);
}

HilbertSeries HilbertSeries::operator-(const HilbertSeries& o) const { return *this + o * -1; }

HilbertSeries HilbertSeries::operator*(const HilbertSeries& o) const {
  return HilbertSeries(poly_mul(num_, o.num_), pole_ + o.pole_);
}

HilbertSeries HilbertSeries::shifted(int k) const {
  std::vector<long> a(static_cast<std::size_t>(k), 0);
  a.insert(a.end(), num_.begin(), num_.end());
  return HilbertSeries(a, pole_);
}

bool HilbertSeries::operator==(const HilbertSeries& o) const {
  const int k = std::max(pole_, o.pole_);
  return raised(k).num_ == o.raised(k).num_;
}

bool HilbertSeries::equal_upto(const HilbertSeries& o, long n) const { return coeffs(n) == o.coeffs(n); }

HilbertSeries HilbertSeries::reduced() const {
  std::vector<long> a = num_;
  int k = pole_;
  while (k > 0 && !a.empty()) {
    long sum = 0;
    for (long x : a) sum += x;
    if (sum != 0) break;
    // synthetic division by (1 - t)
    long acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      acc += a[i];
      a[i] = acc;
    }
    a.pop_back();
    --k;
  }
  return HilbertSeries(a, k);
}

std::string HilbertSeries::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const long c = num_[i];
    if (c == 0) continue;
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const long a = c < 0 ? -c : c;
    if (a != 1 || i == 0) s += std::to_string(a);
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  if (s.empty()) s = "0";
  return "(" + s + ") / (1-t)^" + std::to_string(pole_);
}

Algebra Algebra::of(const Translation& tr, const Divisor& m) {
  Algebra a;
  a.tr = &tr;
  a.m = m;
  a.mu = m.degree();
  if (a.mu < 1) throw std::invalid_argument("Algebra: bar divisor must have positive degree");
  return a;
}

long Algebra::dim_T(long n) const { return n < 0 ? 0 : 1 + mu * binom(n + 1, 2); }

long Algebra::dim_B(long n) const { return n < 0 ? 0 : (n == 0 ? 1 : mu * n); }

Algebra Algebra::blowup(const Divisor& d) const {
  if (d.degree() >= mu) throw DegreeGuard("blowup: deg d must be below mu");
  Algebra a = *this;
  a.m = m - d;
  a.mu = mu - d.degree();
  return a;
}

HilbertSeries Algebra::h_B() const { return HilbertSeries({1, mu - 2, 1}, 2); }

HilbertSeries Algebra::h_T() const { return HilbertSeries({1, mu - 2, 1}, 3); }

long stable_start(const Algebra& a, const Layering& z) {
  long ell = static_cast<long>(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    ell = std::max(ell, z.layers[i].degree() / a.mu + 1 + static_cast<long>(i));
  }
  return ell;
}

DimProfile ideal_dims(const Algebra& a, const Layering& z, long upto) {
  DimProfile p;
  p.entries.assign(static_cast<std::size_t>(std::max(upto, 0L) + 1), DimEntry{});
  if (upto < 0) return p;
  p.s = z.total_degree();
  p.ell = stable_start(a, z);
  if (z.empty()) return p;
  const Curve& c = a.tr->curve();
  DimProfile tail = ideal_dims(a, shifted_tail(*a.tr, z), upto - 1);
  for (long n = 0; n <= upto; ++n) {
    Divisor top = z.side == Side::right ? z.layers[0] : tau_act(*a.tr, z.layers[0], -n + 1);
    const long bar_lo = a.dim_B(n) - h0(c, a.m_n(n) - top);
    const long bar_hi = n >= p.ell ? bar_lo : a.dim_B(n);
    DimEntry t = n >= 1 ? tail.at(n - 1) : DimEntry{};
    DimEntry& e = p.entries[static_cast<std::size_t>(n)];
    e.lo = bar_lo + t.lo;
    e.hi = std::min({bar_hi + t.hi, p.s, a.dim_T(n)});
    if (n >= 1) e.lo = std::max(e.lo, p.entries[static_cast<std::size_t>(n - 1)].lo);
  }
  for (long n = upto - 1; n >= 0; --n) {
    auto& e = p.entries[static_cast<std::size_t>(n)];
    e.hi = std::min(e.hi, p.entries[static_cast<std::size_t>(n + 1)].hi);
  }
  for (long n = 0; n <= upto; ++n) {
    const DimEntry& e = p.at(n);
    if (e.lo > e.hi) p.consistent = false;
    if (n >= p.ell && !(e.lo == p.s && e.hi == p.s)) p.consistent = false;
  }
  if (!tail.consistent) p.consistent = false;
  return p;
}

long prop_M_dims(const Algebra& a, long k, const Divisor& d, long n) {
  if (k > n) throw std::invalid_argument("prop_M_dims: k <= n required");
  if (d.degree() >= a.mu) throw std::invalid_argument("prop_M_dims: deg d < mu required");
  if (k <= 0) return a.dim_T(n);
  return a.dim_T(n) - d.degree() * binom(k + 1, 2);
}

BlowupSeries blowup_series(const Algebra& a, const Divisor& d, long upto, const std::vector<long>& ells) {
  BlowupSeries r;
  for (long n = 0; n <= upto; ++n) r.dims.push_back(prop_M_dims(a, n, d, n));
  r.fitted = HilbertSeries::fit(r.dims, 3);
  const long dd = d.degree();
  r.shifted_form = a.h_T() - HilbertSeries({0, dd}, 3);
  r.literal_form = a.h_T() - HilbertSeries({dd}, 3);
  r.matches_shifted = r.shifted_form.coeffs(upto) == r.dims;
  r.matches_literal = r.literal_form.coeffs(upto) == r.dims;
  for (long ell : ells) {
    std::vector<long> prof;
    for (long n = 0; n <= upto; ++n) prof.push_back(a.dim_T(n) - dd * binom(n - ell + 1, 2));
    r.truncations.emplace_back(ell, prof);
  }
  return r;
}

LineChain line_chain(const Algebra& a, const Divisor& d, long upto) {
  if (d.degree() != a.mu - 1) throw std::invalid_argument("line_chain: deg d = mu - 1 required");
  LineChain c;
  std::vector<long> dims;
  for (long n = 0; n <= upto; ++n) dims.push_back(prop_M_dims(a, n, d, n));
  c.h_R = HilbertSeries::fit(dims, 3);
  const HilbertSeries bar_r = (c.h_R * HilbertSeries({1, -1}, 0)).reduced();  // R/gR
  c.h_M = (c.h_R * poly_series({1, 0, -1})).reduced();
  c.h_xB = bar_r.shifted(2);
  c.h_xBplus = (c.h_xB - poly_series({0, 0, 1})).reduced();
  c.h_L = (c.h_M - c.h_xBplus).reduced();
  c.h_Lprime = (c.h_L - bar_r).reduced();
  c.matches = c.h_R == HilbertSeries({1, -1, 1}, 3) && c.h_M == HilbertSeries({1, 0, 0, 1}, 2) &&
              c.h_xBplus == HilbertSeries({0, 0, 0, 1}, 2) && c.h_L == HilbertSeries({1}, 2) &&
              c.h_Lprime == HilbertSeries({0, 1}, 1);
  return c;
}

}  // namespace tcr
