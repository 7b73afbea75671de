#include <random>

#include "../common/gen.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace tcr;

namespace {

struct Env {
  Translation tr = testfx::trans37(Field::rationals());
  Point p = tr.curve().mul(2, tr.alpha());
  Point q = tr.curve().mul(-60, tr.alpha());
  Divisor P(long k = 0, long m = 1) const { return Divisor::point(tr.tau_pow(p, k), m); }
  Layering R(std::vector<Divisor> ls) const { return make_layering(tr, Side::right, std::move(ls)); }
};

}  // namespace

TEST_CASE("make_layering") {
  Env e;
  CHECK_NOTHROW(e.R({e.P(), e.P(-1)}));
  CHECK_THROWS_AS(e.R({e.P(), e.P()}), AllowabilityError);
  try {
    e.R({e.P(), e.P()});
  } catch (const AllowabilityError& err) {
    CHECK(err.index() == 1);
  }
  CHECK_NOTHROW(make_layering(e.tr, Side::left, {e.P(), e.P(1)}));
  CHECK_THROWS_AS(e.R({e.P() - e.P(1)}), AllowabilityError);
  CHECK(e.R({e.P(), Divisor()}).size() == 1);
}

TEST_CASE("functor examples") {
  Env e;
  Layering empty{Side::right, {}};
  CHECK(apply_F(e.tr, e.p, empty) == e.R({e.P()}));
  CHECK(apply_F(e.tr, e.tr.tau_pow(e.p, -1), e.R({e.P()})) == e.R({e.P() + e.P(-1), e.P(-1)}));
  CHECK(apply_F(e.tr, e.p, e.R({e.P()})) == e.R({e.P(0, 2)}));
  Divisor d = e.P(0, 2) + e.P(-3);
  CHECK(apply_G(e.tr, d, empty) == e.R({d}));
  Divisor pq = e.P() + Divisor::point(e.q);
  Layering got = apply_G(e.tr, pq, e.R({e.P()}));
  CHECK(got == e.R({e.P(0, 2) + Divisor::point(e.q)}));
  CHECK(apply_G_by_points(e.tr, pq, e.R({e.P()}), e.tr.window()) == got);
}

TEST_CASE("closed forms against iteration") {
  Env e;
  std::mt19937 rng(5);
  for (int t = 0; t < 25; ++t) {
    Layering z = testgen::right_layering(e.tr, {e.p, e.q}, 4, 3, rng);
    Divisor d = testgen::orbit_divisor(e.tr, e.p, -2, 1, 2, rng) + testgen::orbit_divisor(e.tr, e.q, 0, 1, 1, rng);
    CHECK(apply_G(e.tr, d, z) == apply_G_by_points(e.tr, d, z, e.tr.window()));
    for (long n = 1; n <= 3; ++n) CHECK(iterate_G_closed(e.tr, d, n, z) == iterate_G_steps(e.tr, d, n, z));
    CHECK(!first_violation(e.tr, Side::right, apply_G(e.tr, d, z).layers).has_value());
  }
  Divisor d = e.P(0) + e.P(-2);
  Layering z = e.R({e.P(0, 2)});
  CHECK(iterate_G_closed(e.tr, d, 1, z) == apply_G(e.tr, d, z));
  for (long k = 1; k <= 4; ++k) CHECK(iterate_G_closed(e.tr, e.P(), k, Layering{}) == layering_M(e.tr, k, e.P()));
}

TEST_CASE("standard layerings") {
  Env e;
  CHECK(layering_M(e.tr, 2, e.P()) == e.R({e.P() + e.P(-1), e.P(-1)}));
  CHECK(layering_M(e.tr, 0, e.P()).empty());
  CHECK(layering_M(e.tr, -2, e.P()).empty());
  CHECK(layering_Q(e.tr, 2, 1, 1, e.p, 3) == e.R({e.P() + e.P(-1), e.P(-1)}));
  CHECK_THROWS(layering_Q(e.tr, 2, 2, 1, e.p, 3));
  CHECK(layering_c(e.tr, 0, 3, e.p) == e.R({e.P(-1) + e.P(-2), e.P(-2)}));
  Layering mp = layering_Mprime(e.tr, 3, e.P());
  CHECK(mp.side == Side::left);
  CHECK(mp.layers[2] == e.P(2));
  CHECK(!first_violation(e.tr, Side::left, mp.layers).has_value());
  // Q(i,0,e,q) is the max of Q(i-1,e,e,q) and Q(i-1,e,e,tau^{-1}q)
  for (long i = 2; i <= 4; ++i)
    for (long m = 1; m <= 3; ++m) {
      Layering lhs = layering_Q(e.tr, i, 0, m, e.p, 3);
      Layering rhs = layering_lattice(layering_Q(e.tr, i - 1, m, m, e.p, 3),
                                      layering_Q(e.tr, i - 1, m, m, e.tr.tau_pow(e.p, -1), 3), LatticeMode::max);
      CHECK(lhs == rhs);
    }
  // Q(k,r,m,p) as a max of M-layerings
  for (long k = 2; k <= 4; ++k)
    for (long m = 1; m <= 3; ++m)
      for (long r = 0; r <= m; ++r) {
        Layering a = layering_lattice(layering_M(e.tr, k, e.P(0, r)), layering_M(e.tr, k - 1, e.P(0, m)), LatticeMode::max);
        a = layering_lattice(a, layering_M(e.tr, k - 1, e.P(-1, m)), LatticeMode::max);
        CHECK(a == layering_Q(e.tr, k, r, m, e.p, 3));
      }
  for (long k = 0; k <= 5; ++k)
    for (long n = k; n <= 6; ++n) {
      auto tp = transpose_identity(e.tr, k, e.P(0, 2) + e.P(-1), n);
      CHECK(tp.right_degree == tp.left_degree);
    }
  CHECK(layering_buildM(e.tr, e.P(), Divisor(), 3) == layering_M(e.tr, 3, e.P()));
}

TEST_CASE("C_p oracle") {
  Env e;
  const int W = 12, B = 6;
  CpIdeal full(W, B);
  CHECK(cp_realize(e.tr, Layering{}, e.p, W, B) == full);
  CpIdeal one = cp_realize(e.tr, e.R({e.P()}), e.p, W, B);
  CHECK(one.at(0, 0) == 1);
  CHECK(one.at(1, 0) == 0);
  CHECK(full.product(CpIdeal::maximal(W, B, 0)) == one);
  CpIdeal m2 = cp_realize(e.tr, layering_M(e.tr, 2, e.P()), e.p, W, B);
  CHECK(m2.at(0, 0) == 1);
  CHECK(m2.at(-1, -1) == 1);
  CHECK(m2.at(0, -1) == 1);
  CHECK(m2.intersect(m2) == m2);
  CHECK(one.at(0, 1) == B);
  std::mt19937 rng(9);
  for (int t = 0; t < 30; ++t) {
    Layering a = testgen::right_layering(e.tr, {e.p}, 4, 3, rng);
    Layering b = testgen::right_layering(e.tr, {e.p}, 4, 3, rng);
    auto rep = cp_suite(e.tr, e.p, a, b, W, B);
    CHECK(rep.ok());
  }
  CHECK_THROWS(cp_realize(e.tr, e.R({e.P() + Divisor::point(e.q)}), e.p, W, B));
}
