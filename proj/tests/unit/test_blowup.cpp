#include "doctest.h"
#include "fixtures.hpp"
#include "tcr/blowup.hpp"

using namespace tcr;

namespace {
Divisor pt(const TcrContext& ctx, long k) { return Divisor::point(ctx.translation().multiple(k)); }
}  // namespace

TEST_CASE("blowup model is g-divisible") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  BlowupModel r(ctx, pt(ctx, 2));
  CHECK(r.dim(3) == 13);
  CHECK(r.algebra().mu == 2);
  Check c = r.g_divisibility(6);
  CHECK(c.passed);
  CHECK_THROWS(BlowupModel(ctx, pt(ctx, 2) * 3));
}

TEST_CASE("bar equalities") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  Divisor p = pt(ctx, 2);
  const Translation& tr = ctx.translation();
  BarEquality e = bar_equality(ctx, {1, p, 1}, {1, tau_act(tr, p, 0), 1}, {2, p, 2});
  CHECK(e.equal);
  CHECK(e.rhs_dim == 4);
  CHECK(bar_equality(ctx, {0, p, 2}, {0, p, 1}, {0, p, 3}).equal);
  // outside the asserted range for mu - deg d = 1: the degree-one pieces are lines
  Divisor d2 = p + pt(ctx, 5);
  BarEquality f = bar_equality(ctx, {1, d2, 1}, {1, d2, 1}, {2, d2, 2});
  CHECK_FALSE(f.equal);
  CHECK(f.lhs_dim < f.rhs_dim);
}

TEST_CASE("multiplication certificates") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  Divisor p = pt(ctx, 2);
  Check c = mult_equality_check(ctx, 1, 1, 1, 1, p);
  CHECK(c.passed);
  CHECK(c.status == "pass");
  CHECK(c.certificate["levels"].size() == 3);
  CHECK(c.rhs.find("= 7") != std::string::npos);
  CHECK(mult_equality_check(ctx, 2, 0, 3, 0, p).passed);
  CHECK(mult_equality_check(ctx, 2, 2, 4, 4, p).passed);
  CHECK(multcomp_check(ctx, 2, p).passed);

  Divisor d2 = p + pt(ctx, 5);
  CHECK(mult_equality_check(ctx, 1, 1, 1, 1, d2).status == "not-claimed");
  CHECK(mult_equality_check(ctx, 1, 1, 2, 2, d2).passed);
  CHECK(mult_equality_check(ctx, 2, 2, 2, 2, d2).passed);

  MultCertificate outside = mult_certificate(ctx, d2, {{1, 1, 1, 1}});
  CHECK_FALSE(outside.certified);
  CHECK_FALSE(outside.levels[0].bar_equal);

  // a forged ledger entry does not replay
  MultCertificate cert = mult_certificate(ctx, p, {{1, 1, 1, 1}});
  Algebra a = algebra_of(ctx);
  CHECK(cert.replay(a));
  cert.levels[1].dim_below += 1;
  CHECK_FALSE(cert.replay(a));
}

TEST_CASE("generation") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  CHECK(generation_check(ctx, pt(ctx, 2), 6).passed);
  CHECK(generation_check(ctx, pt(ctx, 2) + pt(ctx, 7), 5).passed);
  CHECK(generation_check(ctx, Divisor(), 4).passed);
}

TEST_CASE("iteration") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  CHECK(iterate_check(ctx, pt(ctx, 2), Divisor(), 4).passed);
  Check c = iterate_check(ctx, pt(ctx, 2), pt(ctx, 7), 6);
  CHECK(c.passed);
  CHECK(c.certificate["route"] == "series comparison");
  TcrContext ctx4 = testfx::ctx37(Field::prime(10007), 4, 6);
  Check d = iterate_check(ctx4, pt(ctx4, 2), pt(ctx4, 3), 4);
  CHECK(d.passed);
  CHECK(d.certificate["route"] == "degree-one generation");
}

TEST_CASE("exceptional line module") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  const Translation& tr = ctx.translation();
  Point p = tr.multiple(2);
  LineModuleReport rep;
  Check c = exceptional_filtration(ctx, Divisor(), p, 8, &rep);
  CHECK(c.passed);
  CHECK(rep.div == Divisor::point(tr.tau_pow(p, 1)));
  CHECK(rep.series == HilbertSeries({1}, 2));
  CHECK(rep.cyclic);
  CHECK_THROWS(exceptional_filtration(ctx, pt(ctx, 3) + pt(ctx, 4), p, 4));

  // deg d = mu - 2 with L(-d-p) = O(tau p): d = [-2k-1] alpha for p = [k] alpha
  Check s = exceptional_filtration(ctx, pt(ctx, -5), p, 5, &rep);
  CHECK(rep.special_case);
  CHECK_FALSE(rep.cyclic);
  CHECK(s.status == "reported");
  exceptional_filtration(ctx, pt(ctx, 6), p, 5, &rep);
  CHECK_FALSE(rep.special_case);
}

TEST_CASE("module construction") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  Divisor d = pt(ctx, 2) + pt(ctx, 5);
  Check zero = build_module(ctx, d, Divisor(), 5);
  CHECK(zero.passed);
  CHECK(zero.certificate["recovers_T(d)"] == true);
  Check c = build_module(ctx, d, pt(ctx, 2), 5);
  CHECK(c.passed);
  CHECK(build_module(ctx, d, pt(ctx, 2) + pt(ctx, 1), 5).passed);
  CHECK_THROWS(build_module(ctx, d, pt(ctx, 9), 4));
}

TEST_CASE("Q family") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  Point p = ctx.translation().multiple(2);
  QFamilyParams q;
  Check c = q_family_checks(ctx, Divisor::point(p), p, q, 6);
  CHECK(c.passed);
  q.i = 3;
  q.r = 2;
  q.e = 3;
  q.n = 4;
  q.ell = 2;
  CHECK(q_family_checks(ctx, Divisor::point(p, 2), p, q, 7).passed);
  CHECK_THROWS(q_family_checks(ctx, pt(ctx, 2) + pt(ctx, 3), p, QFamilyParams{}, 6));
}

TEST_CASE("left and right ideals") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  Divisor p = pt(ctx, 2);
  for (long n = 1; n <= 5; ++n)
    for (long k = 0; k <= n; ++k) CHECK(left_right_checks(ctx, k, p, n).passed);
  CHECK(left_right_q_check(ctx, 2, 1, 1, ctx.translation().multiple(2), 3).passed);
}

TEST_CASE("shadow conditions") {
  TcrContext ctx = testfx::ctx37(Field::prime(10007), 3);
  const Translation& tr = ctx.translation();
  Point q = tr.multiple(2);
  CHECK(point_space_identity(ctx, q).passed);
  Check good = c1_shadow(ctx, Divisor(), q, 2);
  CHECK(good.status == "consistent");
  Check bad = c1_shadow(ctx, Divisor(), q, 2, pt(ctx, 11));
  CHECK(bad.status == "violated");
  CHECK(bad.passed);
  // degree-one K against a degree-three R~_1 cannot fill the target
  CHECK(c1_shadow(ctx, Divisor(), q, 1).status == "violated");
}
