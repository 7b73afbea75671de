#include "tcr/layering.hpp"

#include <algorithm>
#include <limits>

namespace tcr {

Divisor Layering::at(long i) const {
  if (i < 0 || i >= static_cast<long>(layers.size())) return Divisor();
  return layers[static_cast<std::size_t>(i)];
}

long Layering::total_degree() const {
  long s = 0;
  for (const auto& d : layers) s += d.degree();
  return s;
}

std::string Layering::to_string() const {
  std::string s = side == Side::right ? "R(" : "L(";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i) s += " ; ";
    s += layers[i].to_string();
  }
  return s + ")";
}

std::optional<long> first_violation(const Translation& tr, Side side, const std::vector<Divisor>& layers) {
  const long dir = side == Side::right ? -1 : 1;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (!layers[i].is_effective()) return static_cast<long>(i);
    if (i > 0 && !layers[i].leq(tau_act(tr, layers[i - 1], dir))) return static_cast<long>(i);
  }
  return std::nullopt;
}

Layering trim(Layering z) {
  while (!z.layers.empty() && z.layers.back().is_zero()) z.layers.pop_back();
  return z;
}

Layering make_layering(const Translation& tr, Side side, std::vector<Divisor> layers) {
  if (auto bad = first_violation(tr, side, layers)) {
    const auto& d = layers[static_cast<std::size_t>(*bad)];
    std::string why = d.is_effective() ? "allowability fails at layer " : "non-effective layer ";
    throw AllowabilityError(why + std::to_string(*bad), *bad);
  }
  return trim(Layering{side, std::move(layers)});
}

static void require_right(const Layering& z) {
  if (z.side != Side::right) throw std::invalid_argument("operation requires a right layering");
}

Layering apply_G(const Translation& tr, const Divisor& d, const Layering& z) {
  require_right(z);
  if (!d.is_effective()) throw std::invalid_argument("apply_G needs an effective divisor");
  Layering x{Side::right, {}};
  const long k = static_cast<long>(z.size());
  x.layers.push_back(z.at(0) + d);
  for (long i = 1; i <= k; ++i) x.layers.push_back(dmin(z.at(i) + d, tau_act(tr, z.at(i - 1), -1)));
  return trim(std::move(x));
}

Layering apply_F(const Translation& tr, const Point& q, const Layering& z) { return apply_G(tr, Divisor::point(q), z); }

std::vector<Point> functor_order(const Translation& tr, const Divisor& d, long window) {
  if (!d.is_effective()) throw std::invalid_argument("functor order needs an effective divisor");
  std::vector<Point> out;
  for (const auto& part : split_orbits(tr, d, window)) {
    for (auto [k, m] : part.mult) {
      Point pt = tr.tau_pow(part.base, k);
      for (long r = 0; r < m; ++r) out.push_back(pt);
    }
  }
  return out;
}

Layering apply_G_by_points(const Translation& tr, const Divisor& d, const Layering& z, long window) {
  Layering r = z;
  for (const auto& p : functor_order(tr, d, window)) r = apply_F(tr, p, r);
  return r;
}

Layering iterate_G_closed(const Translation& tr, const Divisor& d, long n, const Layering& z) {
  require_right(z);
  if (n < 1) throw std::invalid_argument("iterate_G_closed needs n >= 1");
  if (!d.is_effective()) throw std::invalid_argument("iterate_G_closed needs an effective divisor");
  std::vector<Divisor> partial(static_cast<std::size_t>(n + 1));
  for (long t = 1; t <= n; ++t) partial[static_cast<std::size_t>(t)] = partial_sum(tr, d, t);
  auto d_sum = [&](long t) { return t <= 0 ? Divisor() : partial[static_cast<std::size_t>(t)]; };
  const long len = static_cast<long>(z.size()) + n;
  Layering w{Side::right, {}};
  for (long i = 0; i < len; ++i) {
    Divisor best;
    for (long j = 0; j <= i; ++j) {
      Divisor term = tau_act(tr, z.at(i - j) + d_sum(n - j), -j);
      best = j == 0 ? term : dmin(best, term);
      if (best.is_zero()) break;
    }
    w.layers.push_back(best);
  }
  return trim(std::move(w));
}

Layering iterate_G_steps(const Translation& tr, const Divisor& d, long n, const Layering& z) {
  Layering r = z;
  for (long t = 0; t < n; ++t) r = apply_G(tr, tau_act(tr, d, -t), r);
  return r;
}

Layering layering_lattice(const Layering& a, const Layering& b, LatticeMode mode) {
  if (a.side != b.side) throw std::invalid_argument("lattice operation on layerings of different sides");
  const std::size_t len = std::max(a.size(), b.size());
  Layering r{a.side, {}};
  for (std::size_t i = 0; i < len; ++i) {
    const long li = static_cast<long>(i);
    r.layers.push_back(mode == LatticeMode::max ? dmax(a.at(li), b.at(li)) : dmin(a.at(li), b.at(li)));
  }
  return trim(std::move(r));
}

Layering layering_M(const Translation& tr, long k, const Divisor& d) {
  Layering z{Side::right, {}};
  for (long i = 0; i < k; ++i) z.layers.push_back(tau_act(tr, partial_sum(tr, d, k - i), -i));
  return trim(std::move(z));
}

Layering layering_Mprime(const Translation& tr, long k, const Divisor& d) {
  Layering z{Side::left, {}};
  for (long i = 0; i < k; ++i) {
    Divisor layer;
    for (long j = i; j < k; ++j) layer += tau_act(tr, d, j);
    z.layers.push_back(layer);
  }
  return trim(std::move(z));
}

static void check_q_range(long i, long r, long d, long mu) {
  if (i < 0 || r < 0 || r > d || d > mu) {
    throw std::invalid_argument("Q parameters out of range: need i >= 0 and 0 <= r <= d <= mu");
  }
}

static Layering q_family(const Translation& tr, long i, long r, long d, const Point& p, long dir, Side side) {
  Layering z{side, {}};
  for (long j = 0; j < i; ++j) {
    Divisor layer;
    if (j < i - 1) {
      for (long t = j; t < i; ++t) layer.add(tr.tau_pow(p, dir * t), d);
    } else {
      layer.add(tr.tau_pow(p, dir * (i - 1)), r);
    }
    z.layers.push_back(layer);
  }
  return trim(std::move(z));
}

Layering layering_Q(const Translation& tr, long i, long r, long d, const Point& p, long mu) {
  check_q_range(i, r, d, mu);
  return q_family(tr, i, r, d, p, -1, Side::right);
}

Layering layering_Qprime(const Translation& tr, long i, long r, long d, const Point& p, long mu) {
  check_q_range(i, r, d, mu);
  return q_family(tr, i, r, d, p, 1, Side::left);
}

Layering layering_c(const Translation& tr, long j, long n, const Point& p) {
  if (j < 0 || n < 0) throw std::invalid_argument("c(j,n) needs j, n >= 0");
  Layering z{Side::right, {}};
  for (long i = 0; i < n; ++i) {
    Divisor layer;
    for (long k = i; k < n; ++k) {
      if (k != i + j) layer.add(tr.tau_pow(p, -k), 1);
    }
    z.layers.push_back(layer);
  }
  return trim(std::move(z));
}

Layering layering_buildM(const Translation& tr, const Divisor& d, const Divisor& y, long m) {
  Layering z{Side::right, {}};
  for (long i = 0; i < m; ++i) z.layers.push_back(tau_act(tr, positive_part(partial_sum(tr, d, m - i) - y), -i));
  return trim(std::move(z));
}

Layering layering_relpoint(const Translation& tr, const Divisor& c, const Point& q, long n) {
  Layering z{Side::right, {}};
  for (long i = 0; i < n; ++i) {
    Divisor layer = tau_act(tr, partial_sum(tr, c, n - i), -i);
    if (i == 0) layer.add(q, 1);
    z.layers.push_back(layer);
  }
  return trim(std::move(z));
}

Layering layering_iterJ(const Translation& tr, const Divisor& c, const Point& p, long n) {
  Layering z{Side::right, {}};
  for (long i = 0; i < n; ++i) {
    Divisor inner = partial_sum(tr, c, n - i);
    if (i == 0) {
      inner.add(p, 1);
      inner.add(tr.tau_pow(p, -1), 1);
    } else if (i == 1) {
      inner.add(p, 1);
    }
    z.layers.push_back(tau_act(tr, inner, -i));
  }
  return trim(std::move(z));
}

Layering shifted_tail(const Translation& tr, const Layering& z) {
  const long dir = z.side == Side::right ? 1 : -1;
  Layering l{z.side, {}};
  for (std::size_t i = 1; i < z.size(); ++i) l.layers.push_back(tau_act(tr, z.layers[i], dir));
  return trim(std::move(l));
}

TransposePair transpose_identity(const Translation& tr, long k, const Divisor& d, long n) {
  if (k < 0 || n < 0) throw std::invalid_argument("transpose_identity needs k, n >= 0");
  TransposePair tp;
  tp.k = k;
  tp.n = n;
  tp.right = layering_M(tr, k, d);
  tp.left = layering_Mprime(tr, k, tau_act(tr, d, n - k));
  tp.right_degree = tp.right.total_degree();
  tp.left_degree = tp.left.total_degree();
  return tp;
}

CpIdeal::CpIdeal(int window, int trunc) : w_(window), b_(trunc) {
  if (window < 1 || trunc < 1) throw std::invalid_argument("C_p truncation needs window, trunc >= 1");
  const int n = 2 * w_ + 1;
  a_.assign(static_cast<std::size_t>(n * n), 0);
  for (int k = -w_; k <= w_; ++k) {
    for (int l = k + 1; l <= w_; ++l) a_[idx(k, l)] = b_;
  }
}

CpIdeal CpIdeal::maximal(int window, int trunc, int i) {
  CpIdeal c(window, trunc);
  c.set(i, i, 1);
  return c;
}

CpIdeal CpIdeal::strictly_lower(int window, int trunc) {
  CpIdeal c(window, trunc);
  for (int k = -window; k <= window; ++k) c.set(k, k, trunc);
  return c;
}

int CpIdeal::at(int k, int l) const {
  if (k < -w_ || k > w_ || l < -w_ || l > w_) throw std::out_of_range("C_p index outside the window");
  return a_[idx(k, l)];
}

void CpIdeal::set(int k, int l, int e) {
  if (l > k) throw std::invalid_argument("C_p entries above the diagonal are zero");
  at(k, l);
  a_[idx(k, l)] = std::min(std::max(e, 0), b_);
}

bool CpIdeal::right_ideal_ok() const {
  for (int k = -w_; k <= w_; ++k) {
    for (int l = -w_; l < k; ++l) {
      if (at(k, l) > at(k, l + 1)) return false;
    }
  }
  return true;
}

CpIdeal CpIdeal::product(const CpIdeal& o) const {
  if (w_ != o.w_ || b_ != o.b_) throw std::invalid_argument("C_p ideals with different truncations");
  CpIdeal r(w_, b_);
  for (int k = -w_; k <= w_; ++k) {
    for (int l = -w_; l <= k; ++l) {
      int best = b_;
      for (int m = l; m <= k; ++m) best = std::min(best, at(k, m) + o.at(m, l));
      r.set(k, l, best);
    }
  }
  return r;
}

CpIdeal CpIdeal::intersect(const CpIdeal& o) const {
  if (w_ != o.w_ || b_ != o.b_) throw std::invalid_argument("C_p ideals with different truncations");
  CpIdeal r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::max(a_[i], o.a_[i]);
  return r;
}

CpIdeal CpIdeal::sum(const CpIdeal& o) const {
  if (w_ != o.w_ || b_ != o.b_) throw std::invalid_argument("C_p ideals with different truncations");
  CpIdeal r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::min(a_[i], o.a_[i]);
  return r;
}

CpIdeal CpIdeal::times_N() const {
  CpIdeal r(w_, b_);
  for (int k = -w_; k <= w_; ++k) {
    r.set(k, k, b_);
    for (int l = -w_; l < k; ++l) r.set(k, l, at(k, l + 1));
  }
  return r;
}

std::string CpIdeal::to_string() const {
  std::string s;
  for (int k = -w_; k <= w_; ++k) {
    for (int l = -w_; l <= k; ++l) {
      if (at(k, l) != 0) s += "a(" + std::to_string(k) + "," + std::to_string(l) + ")=" + std::to_string(at(k, l)) + " ";
    }
  }
  return s.empty() ? "full" : s;
}

CpIdeal cp_realize(const Translation& tr, const Layering& z, const Point& base, int window, int trunc) {
  require_right(z);
  CpIdeal c(window, trunc);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (const auto& [pt, m] : z.layers[i].terms()) {
      auto j = tr.orbit_shift(base, pt);
      if (!j) throw std::invalid_argument("cp_realize: layering is not supported on a single orbit");
      const long row = *j + static_cast<long>(i);
      if (*j <= -window || row >= window) throw std::out_of_range("cp_realize: support leaves the C_p window");
      if (m >= trunc) throw std::out_of_range("cp_realize: multiplicity reaches the truncation");
      c.set(static_cast<int>(row), static_cast<int>(*j), static_cast<int>(m));
    }
  }
  if (!c.right_ideal_ok()) throw std::logic_error("cp_realize: exponent pattern is not a right ideal");
  return c;
}

static std::pair<long, long> support_range(const Translation& tr, const Layering& z, const Point& base) {
  long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (const auto& [pt, m] : z.layers[i].terms()) {
      auto j = tr.orbit_shift(base, pt);
      if (!j) throw std::invalid_argument("cp_suite: layering is not supported on a single orbit");
      lo = std::min(lo, *j);
      hi = std::max(hi, *j + static_cast<long>(i));
    }
  }
  if (lo > hi) return {0, 0};
  return {lo, hi};
}

CpReport cp_suite(const Translation& tr, const Point& base, const Layering& a, const Layering& b, int window, int trunc) {
  CpReport rep;
  auto record = [&](bool ok, const std::string& what) { (ok ? rep.passed : rep.failures).push_back(what); };
  const CpIdeal ia = cp_realize(tr, a, base, window, trunc);
  const CpIdeal ib = cp_realize(tr, b, base, window, trunc);
  for (const Layering* z : {&a, &b}) {
    const CpIdeal iz = z == &a ? ia : ib;
    auto [lo, hi] = support_range(tr, *z, base);
    for (long i = std::max<long>(lo - 2, -window + 2); i <= std::min<long>(hi + 2, window - 2); ++i) {
      Layering fz = apply_F(tr, tr.tau_pow(base, i), *z);
      bool ok = iz.product(CpIdeal::maximal(window, trunc, static_cast<int>(i))) == cp_realize(tr, fz, base, window, trunc);
      record(ok, "n_" + std::to_string(i) + " product for " + z->to_string());
    }
    CpIdeal lhs = iz.intersect(CpIdeal::strictly_lower(window, trunc));
    CpIdeal rhs = cp_realize(tr, shifted_tail(tr, *z), base, window, trunc).times_N();
    record(lhs == rhs, "N-shift rule for " + z->to_string());
  }
  record(ia.intersect(ib) == cp_realize(tr, layering_lattice(a, b, LatticeMode::max), base, window, trunc),
         "intersection = max");
  record(ia.sum(ib) == cp_realize(tr, layering_lattice(a, b, LatticeMode::min), base, window, trunc), "sum = min");
  return rep;
}

}  // namespace tcr
