#pragma once

#include "tcr/curve.hpp"

namespace testfx {

// y^2 + y = x^3 - x
inline tcr::Curve curve37(tcr::Field f) {
  return tcr::Curve(f, f.zero(), f.zero(), f.one(), f.from_int(-1), f.zero());
}

inline tcr::Translation trans37(tcr::Field f, int guard = 64) {
  tcr::Curve c = curve37(f);
  return tcr::Translation(c, c.point(f.zero(), f.zero()), guard);
}

}  // namespace testfx

#include "tcr/sections.hpp"

namespace testfx {

// m = mu * O, grid base [4]alpha
inline tcr::TcrContext ctx37(tcr::Field f, long mu, long max_degree = 8) {
  tcr::Translation tr = trans37(f);
  tcr::Point beta = tr.multiple(4);
  tcr::TcrOptions opt;
  opt.max_degree = max_degree;
  return tcr::TcrContext(tr, tcr::Divisor::point(tcr::Point::infinity(), mu), beta, opt);
}

}  // namespace testfx
