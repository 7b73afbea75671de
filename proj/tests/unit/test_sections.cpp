#include "doctest.h"
#include "fixtures.hpp"

using namespace tcr;

TEST_CASE("graded pieces") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  CHECK(graded_piece(ctx, 0)->dim() == 1);
  CHECK(graded_piece(ctx, 1)->dim() == 3);
  CHECK(graded_piece(ctx, 2)->dim() == 6);
  TcrContext ctx9 = testfx::ctx37(q, 9, 4);
  CHECK(graded_piece(ctx9, 1)->dim() == 9);
}

TEST_CASE("star multiplication in low degree") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  SpacePtr b0 = graded_piece(ctx, 0), b1 = graded_piece(ctx, 1), b2 = graded_piece(ctx, 2);
  CHECK(star_mult(ctx, *b1, *b1) == *b2);
  CHECK(star_mult(ctx, *b0, *b2) == *b2);
  CHECK(star_mult(ctx, *b2, *b0) == *b2);
  SpacePtr w = twisted_space(ctx, 2, Divisor::point(ctx.translation().multiple(2)));
  CHECK(star_mult(ctx, *b0, *w) == *w);
  for (std::size_t i = 0; i < b1->basis.size(); ++i)
    for (std::size_t j = 0; j < b2->basis.size(); j += 2) CHECK(star_symbolic_check(ctx, *b1, *b2, i, j));
}

TEST_CASE("twisted spaces from both constructions") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  const Translation& tr = ctx.translation();
  Point p = tr.multiple(2);
  Divisor d = Divisor::point(p) + Divisor::point(tr.tau_pow(p, -1));
  SpacePtr t = twisted_space(ctx, 2, d);
  CHECK(t->dim() == 4);
  CHECK(*t == twisted_space_by_conditions(ctx, 2, d));
  CHECK(graded_piece(ctx, 2)->contains(*t));
  CHECK(*twisted_space(ctx, 3, Divisor()) == *graded_piece(ctx, 3));
  for (long n = 2; n <= 3; ++n) {
    Divisor e = Divisor::point(p, 2) + Divisor::point(Point::infinity());
    CHECK(*twisted_space(ctx, n, e) == twisted_space_by_conditions(ctx, n, e));
  }
  CHECK_THROWS_AS(twisted_space(ctx, 1, Divisor::point(p, 3)), DegreeGuard);
}

TEST_CASE("common vanishing") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  const Translation& tr = ctx.translation();
  Point p = tr.multiple(2);
  std::vector<Point> cand;
  for (long k = -3; k <= 3; ++k) cand.push_back(tr.tau_pow(p, k));
  CHECK(common_vanishing(ctx, *twisted_space(ctx, 2, Divisor::point(p)), cand) == Divisor::point(p));
  CHECK(common_vanishing(ctx, *graded_piece(ctx, 2), cand).is_zero());
}

TEST_CASE("saturation in a window") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  Point p = ctx.translation().multiple(2);
  std::map<long, SectionSpace> fam;
  fam[0] = span_space(ctx, 0, {});
  for (long n = 1; n <= 4; ++n) fam[n] = *twisted_space(ctx, n, Divisor::point(p));
  SaturationResult s = saturate_window(ctx, fam);
  CHECK(s.right_ideal);
  CHECK(s.stabilized);
  for (long n = 0; n <= 4; ++n) CHECK(s.family.at(n) == fam.at(n));

  // drop degree 1 and one vector in degree 2, then saturate again
  std::map<long, SectionSpace> dented = fam;
  dented[1] = span_space(ctx, 1, {});
  SectionSpace& two = dented[2];
  std::vector<GridFnPtr> gens(two.gens.begin(), two.gens.end() - 1);
  two = span_space(ctx, 2, gens);
  CHECK(two.dim() + 1 == fam.at(2).dim());
  SaturationResult s2 = saturate_window(ctx, dented);
  CHECK(s2.right_ideal);
  CHECK(s2.family.at(2) == fam.at(2));
  CHECK(s2.family.at(1) == fam.at(1));
}

TEST_CASE("dual of a point ideal") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  Point p = ctx.translation().multiple(2);
  for (long r = 1; r <= 2; ++r) {
    DualPointReport d = dual_of_point_ideal(ctx, p, r, 2);
    CHECK(static_cast<long>(d.space.dim()) == d.expected_dim);
    CHECK(d.equals_full);
    CHECK(d.contains_b);
    CHECK(d.quotient_dim == 1);
  }
  CHECK(dual_of_point_ideal(ctx, p, 1, 2).expected_dim == 4);
}

TEST_CASE("multiplication of sections") {
  Field q = Field::rationals();
  TcrContext ctx = testfx::ctx37(q, 3);
  const Translation& tr = ctx.translation();
  const Point o = Point::infinity();
  SurjectivityVerdict v = surjectivity_check(ctx, Divisor::point(o, 3), Divisor::point(o, 3));
  CHECK(v.criterion);
  CHECK(v.computed);
  Divisor l = Divisor::point(o) + Divisor::point(tr.multiple(-1));
  Divisor m = Divisor::point(tr.multiple(-2)) + Divisor::point(tr.multiple(1));
  CHECK(lin_equiv(ctx.curve(), l, m));
  SurjectivityVerdict w = surjectivity_check(ctx, l, m);
  CHECK(!w.criterion);
  CHECK(w.product_rank == 3);
  SurjectivityVerdict u = surjectivity_check(ctx, l, Divisor::point(o, 2));
  CHECK(u.criterion);
  CHECK(u.computed);
}
