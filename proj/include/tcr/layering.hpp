#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcr/divisor.hpp"

namespace tcr {

enum class Side { right, left };

class AllowabilityError : public std::invalid_argument {
 public:
  AllowabilityError(const std::string& what, long index) : std::invalid_argument(what), index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

struct Layering {
  Side side = Side::right;
  std::vector<Divisor> layers;

  std::size_t size() const { return layers.size(); }
  bool empty() const { return layers.empty(); }
  // layer i, or the zero divisor past the end / for negative i
  Divisor at(long i) const;
  long total_degree() const;
  bool operator==(const Layering& o) const { return side == o.side && layers == o.layers; }
  bool operator!=(const Layering& o) const { return !(*this == o); }
  std::string to_string() const;
};

// first failing index (i with d^i not <= tau^{-+1} d^{i-1}, or a non-effective layer), if any
std::optional<long> first_violation(const Translation& tr, Side side, const std::vector<Divisor>& layers);
// validates effectivity and allowability, trims trailing zero layers
Layering make_layering(const Translation& tr, Side side, std::vector<Divisor> layers);
Layering trim(Layering z);

// x^0 = z^0 + d, x^i = min(z^i + d, tau^{-1} z^{i-1})
Layering apply_G(const Translation& tr, const Divisor& d, const Layering& z);
Layering apply_F(const Translation& tr, const Point& q, const Layering& z);
// points of d in the order in which single-point functors are applied: within an orbit,
// lowest tau-index first; orbits in support order
std::vector<Point> functor_order(const Translation& tr, const Divisor& d, long window);
// apply_F over functor_order(d)
Layering apply_G_by_points(const Translation& tr, const Divisor& d, const Layering& z, long window);

// w^i = min_{0<=j<=i} tau^{-j}(z^{i-j} + d_{n-j})
Layering iterate_G_closed(const Translation& tr, const Divisor& d, long n, const Layering& z);
// G_{tau^{-(n-1)} d} o ... o G_{tau^{-1} d} o G_d applied to z
Layering iterate_G_steps(const Translation& tr, const Divisor& d, long n, const Layering& z);

enum class LatticeMode { min, max };
Layering layering_lattice(const Layering& a, const Layering& b, LatticeMode mode);

// Standard families.
Layering layering_M(const Translation& tr, long k, const Divisor& d);
Layering layering_Mprime(const Translation& tr, long k, const Divisor& d);
// requires 0 <= r <= d <= mu
Layering layering_Q(const Translation& tr, long i, long r, long d, const Point& p, long mu);
Layering layering_Qprime(const Translation& tr, long i, long r, long d, const Point& p, long mu);
// layer i: sum of tau^{-k}(p) over i <= k <= n-1, k != i + j
Layering layering_c(const Translation& tr, long j, long n, const Point& p);
// layer i: tau^{-i}((d_{m-i} - y)_+), 0 <= i <= m-1
Layering layering_buildM(const Translation& tr, const Divisor& d, const Divisor& y, long m);
// (c_n + q, tau^{-1} c_{n-1}, ..., tau^{-n+1} c_1)
Layering layering_relpoint(const Translation& tr, const Divisor& c, const Point& q, long n);
// (c_n + p + tau^{-1}p, tau^{-1}(c_{n-1} + p), tau^{-2} c_{n-2}, ..., tau^{-n+1} c_1)
Layering layering_iterJ(const Translation& tr, const Divisor& c, const Point& p, long n);

// (tau d^1, ..., tau d^{k-1}) on the right; tau^{-1} on the left
Layering shifted_tail(const Translation& tr, const Layering& z);

struct TransposePair {
  long k = 0;
  long n = 0;
  Layering right;
  Layering left;
  long right_degree = 0;
  long left_degree = 0;
};
// M(k, d) against M'(k, tau^{n-k} d)
TransposePair transpose_identity(const Translation& tr, long k, const Divisor& d, long n);

// Truncated lower triangular matrix ideals: rows/columns -W..W, entries in k[x]/(x^B).
// Exponent a means the ideal (x^a); exponents >= B are stored as B and mean the zero entry.
class CpIdeal {
 public:
  CpIdeal(int window, int trunc);  // the full ring
  static CpIdeal maximal(int window, int trunc, int i);
  // ideal of matrices with zero diagonal
  static CpIdeal strictly_lower(int window, int trunc);

  int window() const { return w_; }
  int trunc() const { return b_; }
  int at(int k, int l) const;
  void set(int k, int l, int e);
  bool right_ideal_ok() const;

  CpIdeal product(const CpIdeal& o) const;
  CpIdeal intersect(const CpIdeal& o) const;
  CpIdeal sum(const CpIdeal& o) const;
  // right multiplication by the subdiagonal shift N
  CpIdeal times_N() const;

  bool operator==(const CpIdeal& o) const { return w_ == o.w_ && b_ == o.b_ && a_ == o.a_; }
  bool operator!=(const CpIdeal& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  std::size_t idx(int k, int l) const { return static_cast<std::size_t>((k + w_) * (2 * w_ + 1) + (l + w_)); }
  int w_;
  int b_;
  std::vector<int> a_;
};

// a_{j+i, j} = multiplicity of tau^j(base) in z^i
CpIdeal cp_realize(const Translation& tr, const Layering& z, const Point& base, int window, int trunc);

struct CpReport {
  std::vector<std::string> passed;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// product rule with the maximal ideals, lattice correspondence, and the N-shift rule,
// for two right layerings supported on the orbit of base
CpReport cp_suite(const Translation& tr, const Point& base, const Layering& a, const Layering& b, int window, int trunc);

}  // namespace tcr
