#include "tcr/sections.hpp"

#include <algorithm>

namespace tcr {

Scalar GridFn::value(long j) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(j);
    if (it != memo_.end()) return it->second;
  }
  Scalar v = compute(j);
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(j, std::move(v)).first->second;
}

Vec GridFn::values(long first, std::size_t count) const {
  Vec out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(value(first + static_cast<long>(i)));
  return out;
}

namespace {

class FnGrid final : public GridFn {
 public:
  FnGrid(const TcrContext& ctx, FnElement f) : ctx_(ctx), f_(std::move(f)) {}

 protected:
  Scalar compute(long j) const override {
    Point p = ctx_.grid_point(j);
    try {
      return f_(p);
    } catch (const PoleError&) {
      throw GridError("grid point P_" + std::to_string(j) + " = " + p.to_string() +
                      " is a pole of a sampled section; the grid meets a divisor support");
    }
  }

 private:
  const TcrContext& ctx_;
  FnElement f_;
};

class ProductGrid final : public GridFn {
 public:
  ProductGrid(GridFnPtr f, GridFnPtr g, long shift) : f_(std::move(f)), g_(std::move(g)), shift_(shift) {}

 protected:
  Scalar compute(long j) const override { return f_->value(j) * g_->value(j + shift_); }

 private:
  GridFnPtr f_, g_;
  long shift_;
};

class CombGrid final : public GridFn {
 public:
  explicit CombGrid(std::vector<std::pair<Scalar, GridFnPtr>> t) : t_(std::move(t)) {}

 protected:
  Scalar compute(long j) const override {
    Scalar s = t_.front().first.field().zero();
    for (const auto& [c, g] : t_) {
      if (!c.is_zero()) s += c * g->value(j);
    }
    return s;
  }

 private:
  std::vector<std::pair<Scalar, GridFnPtr>> t_;
};

std::string space_key(const char* tag, long n, const Divisor& d) {
  return std::string(tag) + "|" + std::to_string(n) + "|" + d.to_string();
}

// cached L(D) presented in degree n
SpacePtr cached_space(const TcrContext& ctx, long n, const Divisor& d) {
  const std::string key = space_key("L", n, d);
  if (auto s = ctx.cache_get(key)) return s;
  return ctx.cache_put(key, std::make_shared<const SectionSpace>(section_space(ctx, n, d)));
}

// eval vectors (on cols(n)) of the generators
std::vector<Vec> gen_values(const TcrContext& ctx, const SectionSpace& s) {
  std::vector<Vec> out;
  out.reserve(s.gens.size());
  for (const auto& g : s.gens) out.push_back(g->values(0, ctx.cols(s.degree)));
  return out;
}

// combinations sum_i c_i gens_i for each coefficient vector (grid data only)
SectionSpace combine(const TcrContext& ctx, const SectionSpace& base, const std::vector<Vec>& base_vals,
                     const Subspace& coeffs) {
  SectionSpace out;
  out.degree = base.degree;
  std::vector<Vec> rows;
  const std::size_t c = ctx.cols(base.degree);
  for (const auto& v : coeffs.basis()) {
    std::vector<std::pair<Scalar, GridFnPtr>> terms;
    Vec row = zero_vec(ctx.field(), c);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      terms.emplace_back(v[i], base.gens[i]);
      for (std::size_t k = 0; k < c; ++k) row[k] += v[i] * base_vals[i][k];
    }
    out.gens.push_back(grid_combination(std::move(terms)));
    rows.push_back(std::move(row));
  }
  out.eval = Subspace::span(ctx.field(), c, rows);
  return out;
}

}  // namespace

GridFnPtr grid_fn(const TcrContext& ctx, const FnElement& f) { return std::make_shared<FnGrid>(ctx, f); }

GridFnPtr grid_product(GridFnPtr f, GridFnPtr g, long shift) {
  return std::make_shared<ProductGrid>(std::move(f), std::move(g), shift);
}

GridFnPtr grid_combination(std::vector<std::pair<Scalar, GridFnPtr>> terms) {
  if (terms.empty()) throw std::invalid_argument("grid_combination: no terms");
  if (terms.size() == 1 && terms.front().first.is_one()) return terms.front().second;
  return std::make_shared<CombGrid>(std::move(terms));
}

bool SectionSpace::contains(const SectionSpace& o) const {
  if (degree != o.degree) throw AmbientMismatch("section spaces of different degrees");
  return eval.contains(o.eval);
}

TcrContext::TcrContext(Translation tr, Divisor m, Point beta, TcrOptions opt)
    : tr_(std::move(tr)), m_(std::move(m)), mu_(m_.degree()), beta_(std::move(beta)), opt_(opt) {
  if (mu_ < 2) throw std::invalid_argument("the ample divisor must have degree at least 2");
  if (!m_.is_effective()) throw std::invalid_argument("the ample divisor must be effective");
  if (!tr_.curve().contains(beta_) || beta_.inf) throw std::invalid_argument("grid base point must be affine on the curve");
  grid_size_ = opt_.grid_size > 0 ? opt_.grid_size : 4 * mu_ * opt_.max_degree + 8;
  grid_.push_back(beta_);
}

Divisor TcrContext::m_n(long n) const { return partial_sum(tr_, m_, n); }

std::size_t TcrContext::cols(long n) const {
  return static_cast<std::size_t>(mu_ * std::max(n, 0L) + 1 + opt_.slack);
}

Point TcrContext::grid_point(long j) const {
  if (j < 0 || j >= grid_size_) {
    throw GridError("grid index " + std::to_string(j) + " outside [0, " + std::to_string(grid_size_) + ")");
  }
  std::lock_guard<std::mutex> lock(grid_mutex_);
  while (static_cast<long>(grid_.size()) <= j) grid_.push_back(curve().add(grid_.back(), tr_.alpha()));
  return grid_[static_cast<std::size_t>(j)];
}

SpacePtr TcrContext::cache_get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(key);
  return it == cache_.end() ? nullptr : it->second;
}

SpacePtr TcrContext::cache_put(const std::string& key, SpacePtr s) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(key, std::move(s)).first->second;
}

SectionSpace section_space(const TcrContext& ctx, long n, const Divisor& d) {
  const std::size_t c = ctx.cols(n);
  if (d.degree() >= static_cast<long>(c)) {
    throw GridError("degree " + std::to_string(d.degree()) + " needs more than " + std::to_string(c) +
                    " sample points in degree " + std::to_string(n));
  }
  RRSpace rr = riemann_roch_space(ctx.curve(), d);
  SectionSpace s;
  s.degree = n;
  s.divisor = d;
  s.basis = rr.basis;
  std::vector<Vec> rows;
  for (const auto& f : rr.basis) {
    s.gens.push_back(grid_fn(ctx, f));
    rows.push_back(s.gens.back()->values(0, c));
  }
  s.eval = Subspace::span(ctx.field(), c, rows);
  if (s.eval.dim() != rr.dim()) throw GridError("evaluation on the grid is not injective for " + d.to_string());
  return s;
}

SectionSpace span_space(const TcrContext& ctx, long n, std::vector<GridFnPtr> gens) {
  SectionSpace s;
  s.degree = n;
  std::vector<Vec> rows;
  for (const auto& g : gens) rows.push_back(g->values(0, ctx.cols(n)));
  s.gens = std::move(gens);
  s.eval = Subspace::span(ctx.field(), ctx.cols(n), rows);
  return s;
}

SpacePtr graded_piece(const TcrContext& ctx, long n) {
  if (n < 0) throw std::invalid_argument("graded_piece: negative degree");
  return twisted_space(ctx, n, Divisor());
}

SpacePtr twisted_space(const TcrContext& ctx, long n, const Divisor& d) {
  Divisor target = ctx.m_n(n) - d;
  if (n == 0 && d.is_zero()) return cached_space(ctx, 0, target);
  if (target.degree() < 1) {
    throw DegreeGuard("twisted_space: deg(m_" + std::to_string(n) + " - d) = " + std::to_string(target.degree()) +
                      " is below 1");
  }
  return cached_space(ctx, n, target);
}

SectionSpace twisted_space_by_conditions(const TcrContext& ctx, long n, const Divisor& d) {
  if (!d.is_effective()) throw std::invalid_argument("twisted_space_by_conditions: effective divisor expected");
  const Curve& c = ctx.curve();
  const Divisor mn = ctx.m_n(n);
  RRSpace b = riemann_roch_space(c, mn);
  const std::size_t nb = b.dim();
  Matrix cond(ctx.field(), nb);
  for (const auto& [p, mult] : d.terms()) {
    const long req = poly_valuation(c, b.h, p) + mult - mn[p];
    if (req <= 0 && !p.inf) continue;
    if (p.inf) {
      // pole order of A + By at O must be at most -req; x^i has order 2i, x^i y has 2i + 3
      const long max_pole = -req;
      long top = 0;
      for (const auto& [a, bb] : b.numerators) {
        top = std::max(top, std::max(a.is_zero() ? 0 : 2 * a.degree(), bb.is_zero() ? 0 : 2 * bb.degree() + 3));
      }
      for (long ord = max_pole + 1; ord <= top; ++ord) {
        Vec row;
        for (const auto& [a, bb] : b.numerators) {
          row.push_back(ord % 2 == 0 ? a.coeff(ord / 2) : bb.coeff((ord - 3) / 2));
        }
        cond.rows.push_back(std::move(row));
      }
      continue;
    }
    const auto prec = static_cast<std::size_t>(req);
    LocalParam lp = local_param(c, p, prec);
    std::vector<Series> ser;
    for (const auto& [a, bb] : b.numerators) ser.push_back(compose(a, lp.x) + compose(bb, lp.x) * lp.y);
    for (std::size_t t = 0; t < prec; ++t) {
      Vec row;
      for (const auto& s : ser) row.push_back(s.c[t]);
      cond.rows.push_back(std::move(row));
    }
  }
  Subspace coeffs = cond.rows.empty() ? Subspace::full(ctx.field(), nb) : kernel(cond);
  SectionSpace out;
  out.degree = n;
  out.divisor = mn - d;
  std::vector<Vec> rows;
  for (const auto& v : coeffs.basis()) {
    Poly a(ctx.field()), bb(ctx.field());
    for (std::size_t i = 0; i < nb; ++i) {
      if (v[i].is_zero()) continue;
      a = a + b.numerators[i].first * v[i];
      bb = bb + b.numerators[i].second * v[i];
    }
    out.basis.emplace_back(c, a, bb, b.h);
    out.gens.push_back(grid_fn(ctx, out.basis.back()));
    rows.push_back(out.gens.back()->values(0, ctx.cols(n)));
  }
  out.eval = Subspace::span(ctx.field(), ctx.cols(n), rows);
  return out;
}

SectionSpace star_mult(const TcrContext& ctx, const SectionSpace& v, const SectionSpace& w,
                       std::optional<std::size_t> stop_rank) {
  const long a = v.degree;
  const long n = v.degree + w.degree;
  const std::size_t c = ctx.cols(n);
  if (static_cast<long>(c) + a > ctx.grid_size()) {
    throw GridError("grid of size " + std::to_string(ctx.grid_size()) + " too small for a product in degree " +
                    std::to_string(n));
  }
  std::size_t bound = v.gens.size() * w.gens.size();
  if (v.divisor && w.divisor) {
    const long deg = v.divisor->degree() + w.divisor->degree();
    if (deg >= 1) bound = std::min(bound, static_cast<std::size_t>(deg));
  }
  if (stop_rank) bound = std::min(bound, *stop_rank);

  SectionSpace out;
  out.degree = n;
  EchelonBuilder eb(ctx.field(), c);
  const std::size_t nv = v.gens.size();
  const std::size_t nw = w.gens.size();
  if (nv && nw && bound > 0) {
    bool done = false;
    for (std::size_t s = 0; s + 1 < nv + nw && !done; ++s) {
      const std::size_t lo = s >= nw ? s - nw + 1 : 0;
      for (std::size_t i = lo; i <= std::min(s, nv - 1); ++i) {
        auto g = grid_product(v.gens[i], w.gens[s - i], a);
        if (eb.add(g->values(0, c))) out.gens.push_back(g);
        if (eb.rank() >= bound) {
          done = true;
          break;
        }
      }
    }
  }
  out.eval = eb.finish();
  if (ctx.options().symbolic_checks && n <= 4 && !v.basis.empty() && !w.basis.empty() && v.divisor && w.divisor) {
    const std::size_t i = (nv * 7 + nw * 3) % v.basis.size();
    const std::size_t j = (nv * 5 + nw * 11) % w.basis.size();
    if (!star_symbolic_check(ctx, v, w, i, j)) throw std::logic_error("star_mult: symbolic cross-check failed");
  }
  return out;
}

bool star_symbolic_check(const TcrContext& ctx, const SectionSpace& v, const SectionSpace& w, std::size_t i,
                         std::size_t j) {
  if (!v.divisor || !w.divisor || i >= v.basis.size() || j >= w.basis.size()) {
    throw std::invalid_argument("star_symbolic_check: symbolic bases and divisors required");
  }
  const Translation& tr = ctx.translation();
  const long a = v.degree;
  FnElement prod = v.basis[i] * pullback(w.basis[j], tr, a);
  Divisor target = *v.divisor + tau_act(tr, *w.divisor, -a);
  if (!certify_membership(prod, target)) return false;
  const std::size_t c = ctx.cols(v.degree + w.degree);
  for (std::size_t k = 0; k < c; ++k) {
    const long col = static_cast<long>(k);
    Scalar direct = v.basis[i](ctx.grid_point(col)) * w.basis[j](ctx.grid_point(col + a));
    if (prod(ctx.grid_point(col)) != direct) return false;
  }
  return true;
}

SectionSpace space_sum(const TcrContext& ctx, const SectionSpace& a, const SectionSpace& b) {
  (void)ctx;
  if (a.degree != b.degree) throw AmbientMismatch("space_sum: different degrees");
  SectionSpace out;
  out.degree = a.degree;
  out.gens = a.gens;
  out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
  if (a.basis.size() == a.gens.size() && b.basis.size() == b.gens.size()) {
    out.basis = a.basis;
    out.basis.insert(out.basis.end(), b.basis.begin(), b.basis.end());
  }
  out.eval = a.eval.sum(b.eval);
  return out;
}

Divisor common_vanishing(const TcrContext& ctx, const SectionSpace& v, const std::vector<Point>& candidates,
                         std::optional<Divisor> ref) {
  const long n = v.degree;
  const Divisor r = ref ? *ref : ctx.m_n(n);
  if (!cached_space(ctx, n, r)->contains(v)) {
    throw std::invalid_argument("common_vanishing: space not contained in L(" + r.to_string() + ")");
  }
  Divisor out;
  if (v.dim() == 0) return out;
  for (const auto& p : candidates) {
    long k = 0;
    while (true) {
      Divisor next = r - Divisor::point(p, k + 1);
      if (next.degree() < 1) break;
      if (!cached_space(ctx, n, next)->contains(v)) break;
      ++k;
    }
    out.add(p, k);
  }
  return out;
}

SaturationResult saturate_window(const TcrContext& ctx, const std::map<long, SectionSpace>& family) {
  if (family.empty()) throw std::invalid_argument("saturate_window: empty family");
  const long n0 = family.begin()->first;
  const long top = family.rbegin()->first;
  for (long n = n0; n <= top; ++n) {
    if (!family.count(n)) throw std::invalid_argument("saturate_window: degrees must be contiguous");
  }
  SaturationResult res;
  SpacePtr b1 = graded_piece(ctx, 1);
  for (long n = n0; n < top; ++n) {
    const SectionSpace& vn = family.at(n);
    if (vn.dim() == 0) continue;
    SectionSpace prod = star_mult(ctx, vn, *b1);
    if (!family.at(n + 1).eval.contains(prod.eval)) res.right_ideal = false;
  }

  auto step = [&](long n, const SectionSpace& above) {
    SpacePtr bn = graded_piece(ctx, n);
    const std::size_t c1 = ctx.cols(n + 1);
    Matrix m(ctx.field(), 0);
    for (const auto& g : bn->gens) {
      Vec row;
      for (const auto& h : b1->gens) {
        Vec pv = grid_product(g, h, n)->values(0, c1);
        Vec r = above.eval.residual(pv);
        row.insert(row.end(), r.begin(), r.end());
      }
      m.cols = row.size();
      m.rows.push_back(std::move(row));
    }
    Subspace coeffs = left_kernel(m);
    return combine(ctx, *bn, gen_values(ctx, *bn), coeffs);
  };
  auto run = [&](long from) {
    std::map<long, SectionSpace> sat;
    sat[from] = family.at(from);
    for (long n = from - 1; n >= n0; --n) sat[n] = step(n, sat.at(n + 1));
    return sat;
  };
  res.family = run(top);
  if (top - 1 > n0) {
    auto alt = run(top - 1);
    for (long n = n0; n <= top - 2; ++n) {
      if (alt.at(n) != res.family.at(n)) res.stabilized = false;
    }
  } else {
    res.stabilized = false;
  }
  return res;
}

DualPointReport dual_of_point_ideal(const TcrContext& ctx, const Point& q, long r, long window) {
  if (r < 1) throw std::invalid_argument("dual_of_point_ideal: r >= 1 required");
  const Translation& tr = ctx.translation();
  Divisor d = ctx.m_n(r) + Divisor::point(tr.tau_pow(q, -r));
  SpacePtr k = cached_space(ctx, r, d);
  Matrix m(ctx.field(), 0);
  for (const auto& f : k->gens) {
    Vec row;
    for (long n = 1; n <= window; ++n) {
      SpacePtr ideal = twisted_space(ctx, n, Divisor::point(q));
      SpacePtr target = graded_piece(ctx, n + r);
      const std::size_t c = ctx.cols(n + r);
      for (const auto& s : ideal->gens) {
        Vec rv = target->eval.residual(grid_product(f, s, r)->values(0, c));
        row.insert(row.end(), rv.begin(), rv.end());
      }
    }
    m.cols = row.size();
    m.rows.push_back(std::move(row));
  }
  DualPointReport rep;
  Subspace coeffs = m.cols == 0 ? Subspace::full(ctx.field(), k->gens.size()) : left_kernel(m);
  rep.space = combine(ctx, *k, gen_values(ctx, *k), coeffs);
  rep.space.divisor = d;
  SpacePtr br = graded_piece(ctx, r);
  rep.expected_dim = 1 + static_cast<long>(br->dim());
  rep.equals_full = rep.space.eval == k->eval;
  rep.contains_b = rep.space.eval.contains(br->eval);
  rep.quotient_dim = static_cast<long>(rep.space.dim()) - static_cast<long>(br->dim());
  return rep;
}

SurjectivityVerdict surjectivity_check(const TcrContext& ctx, const Divisor& l, const Divisor& m) {
  if (l.degree() < 1 || m.degree() < 1) throw DegreeGuard("surjectivity_check: both degrees must be at least 1");
  const Curve& c = ctx.curve();
  SurjectivityVerdict v;
  v.criterion = l.degree() >= 2 && m.degree() >= 2 && !(l.degree() == 2 && lin_equiv(c, l, m));
  RRSpace rl = riemann_roch_space(c, l);
  RRSpace rm = riemann_roch_space(c, m);
  RRSpace rt = riemann_roch_space(c, l + m);
  v.target_dim = static_cast<long>(rt.dim());
  const std::size_t cols = static_cast<std::size_t>(v.target_dim + 1 + ctx.options().slack);
  std::vector<Point> pts;
  for (std::size_t j = 0; j < cols; ++j) pts.push_back(ctx.grid_point(static_cast<long>(j)));
  auto eval = [&](const FnElement& f) {
    Vec out;
    for (const auto& p : pts) {
      try {
        out.push_back(f(p));
      } catch (const PoleError&) {
        throw GridError("surjectivity_check: grid meets the support");
      }
    }
    return out;
  };
  std::vector<Vec> tv;
  for (const auto& f : rt.basis) tv.push_back(eval(f));
  Subspace target = Subspace::span(ctx.field(), cols, tv);
  if (static_cast<long>(target.dim()) != v.target_dim) throw GridError("surjectivity_check: evaluation not injective");
  std::vector<Vec> lv, mv;
  for (const auto& f : rl.basis) lv.push_back(eval(f));
  for (const auto& f : rm.basis) mv.push_back(eval(f));
  EchelonBuilder eb(ctx.field(), cols);
  for (const auto& a : lv) {
    for (const auto& b : mv) {
      Vec p(cols);
      for (std::size_t k = 0; k < cols; ++k) p[k] = a[k] * b[k];
      if (!target.contains(p)) throw std::logic_error("surjectivity_check: product outside the target space");
      eb.add(std::move(p));
    }
  }
  v.product_rank = eb.rank();
  v.computed = static_cast<long>(v.product_rank) == v.target_dim;
  if (v.computed != v.criterion) {
    throw std::logic_error("surjectivity_check: criterion and computation disagree for L = " + l.to_string() +
                           ", M = " + m.to_string());
  }
  return v;
}

}  // namespace tcr
