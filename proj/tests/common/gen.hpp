#pragma once

#include <random>
#include <vector>

#include "tcr/layering.hpp"

namespace testgen {

// effective divisor on the orbit of base, indices in [lo, hi], multiplicities <= maxmult
inline tcr::Divisor orbit_divisor(const tcr::Translation& tr, const tcr::Point& base, long lo, long hi, long maxmult,
                                  std::mt19937& rng, double density = 0.5) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<long> m(1, maxmult);
  tcr::Divisor d;
  for (long k = lo; k <= hi; ++k) {
    if (u(rng) < density) d.add(tr.tau_pow(base, k), m(rng));
  }
  return d;
}

// random right-allowable layering: each layer is a random sub-divisor of tau^{-1} of the previous one
inline tcr::Layering right_layering(const tcr::Translation& tr, const std::vector<tcr::Point>& bases, long maxlayers,
                                    long maxmult, std::mt19937& rng) {
  std::uniform_int_distribution<long> nl(1, maxlayers);
  std::uniform_real_distribution<double> u(0, 1);
  const long k = nl(rng);
  std::vector<tcr::Divisor> layers;
  tcr::Divisor top;
  for (const auto& b : bases) top += orbit_divisor(tr, b, -1, 2, maxmult, rng, 0.6);
  if (top.is_zero()) top.add(bases.front(), 1);
  layers.push_back(top);
  for (long i = 1; i < k; ++i) {
    tcr::Divisor prev = tcr::tau_act(tr, layers.back(), -1);
    tcr::Divisor next;
    for (const auto& [p, m] : prev.terms()) {
      std::uniform_int_distribution<long> keep(0, m);
      long kept = u(rng) < 0.8 ? std::max(keep(rng), m - 1) : keep(rng);
      next.add(p, kept);
    }
    if (next.is_zero()) break;
    layers.push_back(next);
  }
  return tcr::make_layering(tr, tcr::Side::right, layers);
}

}  // namespace testgen
