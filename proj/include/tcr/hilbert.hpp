#pragma once

#include <string>
#include <vector>

#include "tcr/layering.hpp"

namespace tcr {

long binom(long n, long k);

// numerator(t) / (1 - t)^pole
class HilbertSeries {
 public:
  HilbertSeries() = default;
  HilbertSeries(std::vector<long> numerator, int pole);
  // recovers the numerator from the first coefficients; throws if they do not determine it
  static HilbertSeries fit(const std::vector<long>& coeffs, int pole);

  const std::vector<long>& numerator() const { return num_; }
  int pole() const { return pole_; }
  long coeff(long n) const;
  std::vector<long> coeffs(long upto) const;

  HilbertSeries operator+(const HilbertSeries& o) const;
  HilbertSeries operator-(const HilbertSeries& o) const;
  HilbertSeries operator*(const HilbertSeries& o) const;
  HilbertSeries operator*(long c) const;
  HilbertSeries shifted(int k) const;  // times t^k
  bool operator==(const HilbertSeries& o) const;
  bool operator!=(const HilbertSeries& o) const { return !(*this == o); }
  bool equal_upto(const HilbertSeries& o, long n) const;
  // cancels common factors of (1 - t)
  HilbertSeries reduced() const;
  std::string to_string() const;

 private:
  HilbertSeries raised(int pole) const;
  std::vector<long> num_;
  int pole_ = 0;
};

// polynomial as a series with pole order 0
HilbertSeries poly_series(std::vector<long> p);

// An elliptic algebra seen through its g-filtration: T/gT = B(E, O(m), tau).
struct Algebra {
  const Translation* tr = nullptr;
  Divisor m;
  long mu = 0;

  static Algebra of(const Translation& tr, const Divisor& m);
  long dim_T(long n) const;
  long dim_B(long n) const;
  Divisor m_n(long n) const { return partial_sum(*tr, m, n); }
  // T(d): bar divisor m - d
  Algebra blowup(const Divisor& d) const;
  HilbertSeries h_B() const;
  HilbertSeries h_T() const;
};

struct DimEntry {
  long lo = 0;
  long hi = 0;
  bool exact() const { return lo == hi; }
};

// dimensions of (T/J)_n for n = 0..upto
struct DimProfile {
  std::vector<DimEntry> entries;
  long s = 0;         // sum of layer degrees
  long ell = 0;       // start of the certified stable range
  bool consistent = true;
  const DimEntry& at(long n) const { return entries.at(static_cast<std::size_t>(n)); }
};

long stable_start(const Algebra& a, const Layering& z);
DimProfile ideal_dims(const Algebra& a, const Layering& z, long upto);

// dim T_n - deg d * C(k+1, 2)
long prop_M_dims(const Algebra& a, long k, const Divisor& d, long n);

struct BlowupSeries {
  std::vector<long> dims;        // dim R_n, n = 0..upto
  HilbertSeries fitted;          // recovered from dims
  HilbertSeries shifted_form;    // h_T - d t / (1-t)^3
  HilbertSeries literal_form;    // h_T - d / (1-t)^3
  bool matches_shifted = false;
  bool matches_literal = false;
  std::vector<std::pair<long, std::vector<long>>> truncations;  // ell -> dim T_n - d C(n-ell+1, 2)
};

BlowupSeries blowup_series(const Algebra& a, const Divisor& d, long upto, const std::vector<long>& ells = {});

struct LineChain {
  HilbertSeries h_R, h_M, h_xB, h_xBplus, h_L, h_Lprime;
  bool matches = false;
};

// R = T(d) with deg d = mu - 1, M = R/g^2 R and the line module built from it
LineChain line_chain(const Algebra& a, const Divisor& d, long upto);

}  // namespace tcr
