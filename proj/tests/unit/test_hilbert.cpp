#include "doctest.h"
#include "fixtures.hpp"
#include "tcr/hilbert.hpp"

using namespace tcr;

TEST_CASE("series coefficients and arithmetic") {
  HilbertSeries h({1, -1, 1}, 3);
  CHECK(h.coeffs(4) == std::vector<long>{1, 2, 4, 7, 11});
  HilbertSeries a({1}, 1), b({1}, 2);
  CHECK((a * a) == b);
  CHECK((b - a).reduced() == HilbertSeries({0, 1}, 2));
  CHECK(HilbertSeries({1, -1}, 2).reduced() == a);
  CHECK(HilbertSeries({1, -1}, 2).reduced().pole() == 1);
  CHECK(a.shifted(2).coeffs(3) == std::vector<long>{0, 0, 1, 1});
  CHECK(HilbertSeries::fit(h.coeffs(10), 3) == h);
  CHECK_THROWS(HilbertSeries::fit({1, 2}, 3));
  CHECK(h.to_string() == "(1 - t + t^2) / (1-t)^3");
}

TEST_CASE("base algebra dimensions") {
  Field q = Field::rationals();
  Translation tr = testfx::trans37(q);
  Algebra a = Algebra::of(tr, Divisor::point(Point::infinity(), 3));
  CHECK(a.h_T().coeffs(3) == std::vector<long>{1, 4, 10, 19});
  CHECK(a.h_B().coeffs(3) == std::vector<long>{1, 3, 6, 9});
  for (long n = 0; n <= 6; ++n) CHECK(a.h_T().coeff(n) == a.dim_T(n));
}

TEST_CASE("quotient profiles of layerings") {
  Field q = Field::rationals();
  Translation tr = testfx::trans37(q);
  Algebra a = Algebra::of(tr, Divisor::point(Point::infinity(), 3));
  Point p = tr.multiple(2);

  DimProfile m1 = ideal_dims(a, layering_M(tr, 1, Divisor::point(p)), 5);
  CHECK(m1.consistent);
  for (long n = 0; n <= 5; ++n) {
    CHECK(m1.at(n).exact());
    CHECK(m1.at(n).lo == 1);
  }

  Layering z = layering_Q(tr, 2, 1, 1, p, 3);
  DimProfile qp = ideal_dims(a, z, 6);
  CHECK(qp.consistent);
  CHECK(qp.s == 3);
  for (long n = qp.ell; n <= 6; ++n) CHECK(qp.at(n).lo == 3);

  Layering m2 = layering_M(tr, 2, Divisor::point(p));
  DimProfile pm = ideal_dims(a, m2, 6);
  CHECK(pm.consistent);
  CHECK(pm.s == 3);
  for (long n = 2; n <= 6; ++n) CHECK(a.dim_T(n) - pm.at(n).lo == prop_M_dims(a, 2, Divisor::point(p), n));
}

TEST_CASE("prop_M dimensions") {
  Field q = Field::rationals();
  Translation tr = testfx::trans37(q);
  Algebra a = Algebra::of(tr, Divisor::point(Point::infinity(), 3));
  Divisor p = Divisor::point(tr.multiple(2));
  CHECK(prop_M_dims(a, 1, p, 3) == 18);
  CHECK(prop_M_dims(a, 2, p + p, 3) == 13);
  CHECK(prop_M_dims(a, 0, p, 2) == 10);
  CHECK_THROWS(prop_M_dims(a, 3, p, 2));
}

TEST_CASE("blowup series") {
  Field q = Field::rationals();
  Translation tr = testfx::trans37(q);
  Algebra a = Algebra::of(tr, Divisor::point(Point::infinity(), 3));
  Divisor d = Divisor::point(tr.multiple(2));
  BlowupSeries s = blowup_series(a, d, 8, {0, 2});
  CHECK(std::vector<long>(s.dims.begin(), s.dims.begin() + 5) == std::vector<long>{1, 3, 7, 13, 21});
  CHECK(s.matches_shifted);
  CHECK_FALSE(s.matches_literal);
  CHECK(s.fitted == s.shifted_form);
  CHECK(s.truncations.size() == 2);
  CHECK(s.truncations[0].second == s.dims);

  Algebra r = a.blowup(d);
  CHECK(r.mu == 2);
  for (long n = 0; n <= 6; ++n) CHECK(r.dim_T(n) == s.dims[static_cast<std::size_t>(n)]);
}

TEST_CASE("line module chain") {
  Field q = Field::rationals();
  Translation tr = testfx::trans37(q);
  Algebra a = Algebra::of(tr, Divisor::point(Point::infinity(), 3));
  Divisor d = Divisor::point(tr.multiple(2)) + Divisor::point(tr.multiple(3));
  LineChain c = line_chain(a, d, 10);
  CHECK(c.matches);
  CHECK(c.h_Lprime.coeffs(3) == std::vector<long>{0, 1, 1, 1});
}
