#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcr/function.hpp"
#include "tcr/linalg.hpp"

namespace tcr {

class GridError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A section sampled on the grid P_j = beta + j*alpha, values memoized per index.
class GridFn {
 public:
  virtual ~GridFn() = default;
  Scalar value(long j) const;
  Vec values(long first, std::size_t count) const;

 protected:
  virtual Scalar compute(long j) const = 0;

 private:
  mutable std::mutex mutex_;
  mutable std::map<long, Scalar> memo_;
};

using GridFnPtr = std::shared_ptr<const GridFn>;

class TcrContext;

GridFnPtr grid_fn(const TcrContext& ctx, const FnElement& f);
// j -> f(j) * g(j + shift): the star product of f in degree `shift` with g
GridFnPtr grid_product(GridFnPtr f, GridFnPtr g, long shift);
GridFnPtr grid_combination(std::vector<std::pair<Scalar, GridFnPtr>> terms);

// A space of sections presented in degree n. Equality is equality of the canonical
// evaluation subspaces on the first cols(n) grid points.
struct SectionSpace {
  long degree = 0;
  std::optional<Divisor> divisor;  // set when the space is exactly L(divisor)
  std::vector<FnElement> basis;    // symbolic basis, when known
  std::vector<GridFnPtr> gens;     // spanning set on the grid
  Subspace eval;

  std::size_t dim() const { return eval.dim(); }
  bool contains(const SectionSpace& o) const;
  bool operator==(const SectionSpace& o) const { return degree == o.degree && eval == o.eval; }
  bool operator!=(const SectionSpace& o) const { return !(*this == o); }
};

using SpacePtr = std::shared_ptr<const SectionSpace>;

struct TcrOptions {
  long slack = 3;          // extra sample points beyond deg m_n + 1
  long max_degree = 8;     // N_max for the default grid size
  long grid_size = 0;      // 0 selects 4 * mu * max_degree + 8
  bool symbolic_checks = true;
};

class TcrContext {
 public:
  TcrContext(Translation tr, Divisor m, Point beta, TcrOptions opt = {});

  const Translation& translation() const { return tr_; }
  const Curve& curve() const { return tr_.curve(); }
  Field field() const { return tr_.curve().field(); }
  const Divisor& m() const { return m_; }
  long mu() const { return mu_; }
  const Point& beta() const { return beta_; }
  const TcrOptions& options() const { return opt_; }
  long grid_size() const { return grid_size_; }

  Divisor m_n(long n) const;
  std::size_t cols(long n) const;
  // beta + j alpha; GridError outside [0, grid_size)
  Point grid_point(long j) const;

  SpacePtr cache_get(const std::string& key) const;
  SpacePtr cache_put(const std::string& key, SpacePtr s) const;

 private:
  Translation tr_;
  Divisor m_;
  long mu_;
  Point beta_;
  TcrOptions opt_;
  long grid_size_;
  mutable std::mutex grid_mutex_;
  mutable std::vector<Point> grid_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, SpacePtr> cache_;
};

// L(D) presented in degree n
SectionSpace section_space(const TcrContext& ctx, long n, const Divisor& d);
// a space spanned by grid functions in degree n
SectionSpace span_space(const TcrContext& ctx, long n, std::vector<GridFnPtr> gens);

// B_n = L(m_n)
SpacePtr graded_piece(const TcrContext& ctx, long n);
// L(m_n - d); rejects deg(m_n - d) < 1
SpacePtr twisted_space(const TcrContext& ctx, long n, const Divisor& d);
// {x in B_n : v_P(x) + m_n(P) >= d(P) for all P}, from vanishing conditions on B_n; d effective
SectionSpace twisted_space_by_conditions(const TcrContext& ctx, long n, const Divisor& d);

// span of v * (tau^a)^* w; stops once the rank reaches stop_rank (or the Riemann-Roch bound when
// both factors carry divisors)
SectionSpace star_mult(const TcrContext& ctx, const SectionSpace& v, const SectionSpace& w,
                       std::optional<std::size_t> stop_rank = std::nullopt);
SectionSpace space_sum(const TcrContext& ctx, const SectionSpace& a, const SectionSpace& b);

// symbolic cross-check of one product f * pullback(g, a): membership in L(D_v + tau^{-a} D_w) and
// agreement with the grid values
bool star_symbolic_check(const TcrContext& ctx, const SectionSpace& v, const SectionSpace& w, std::size_t i,
                         std::size_t j);

// sum over candidates of min_{x in V} (v_P(x) + ref(P)) P; ref defaults to m_n
Divisor common_vanishing(const TcrContext& ctx, const SectionSpace& v, const std::vector<Point>& candidates,
                         std::optional<Divisor> ref = std::nullopt);

struct SaturationResult {
  std::map<long, SectionSpace> family;
  bool right_ideal = true;
  bool stabilized = true;
};

// V_n^sat = {x in B_n : x * B_1 in V_{n+1}^sat}, descending from the top degree of the family
SaturationResult saturate_window(const TcrContext& ctx, const std::map<long, SectionSpace>& family);

struct DualPointReport {
  SectionSpace space;
  long expected_dim = 0;        // 1 + dim B_r
  bool equals_full = false;     // result = L(m_r + tau^{-r} q)
  bool contains_b = false;      // B_r inside the result
  long quotient_dim = 0;        // dim result - dim B_r
};

DualPointReport dual_of_point_ideal(const TcrContext& ctx, const Point& q, long r, long window);

struct SurjectivityVerdict {
  bool criterion = false;
  bool computed = false;
  std::size_t product_rank = 0;
  long target_dim = 0;
};

// multiplication H0(L) x H0(M) -> H0(L + M); throws std::logic_error if criterion and computation disagree
SurjectivityVerdict surjectivity_check(const TcrContext& ctx, const Divisor& l, const Divisor& m);

}  // namespace tcr
