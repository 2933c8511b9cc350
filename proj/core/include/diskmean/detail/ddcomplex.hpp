#pragma once

#include <cmath>
#include <complex>

// Minimal double-double arithmetic (~31 significant digits) for the
// cancellation-prone middle band of the Bessel power series. Algorithms are
// the standard error-free transformations (Dekker/Knuth two-sum, fma-based
// two-prod) with one renormalisation per operation.

namespace diskmean::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  return {s, (a - (s - v)) + (b - v)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_from(double a) { return {a, 0.0}; }

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(const DD& a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul_d(const DD& a, double d) {
  DD p = two_prod(a.hi, d);
  p.lo += a.lo * d;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_d(const DD& a, double d) {
  const double q1 = a.hi / d;
  const DD t = two_prod(q1, d);
  const double q2 = ((a.hi - t.hi) - t.lo + a.lo) / d;
  return quick_two_sum(q1, q2);
}

struct DDC {
  DD re, im;
};

inline DDC ddc_from(std::complex<double> w) { return {dd_from(w.real()), dd_from(w.imag())}; }

inline std::complex<double> ddc_to_complex(const DDC& a) {
  return {a.re.hi + a.re.lo, a.im.hi + a.im.lo};
}

inline DDC ddc_add(const DDC& a, const DDC& b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline DDC ddc_mul(const DDC& a, const DDC& b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline DDC ddc_div_d(const DDC& a, double d) { return {dd_div_d(a.re, d), dd_div_d(a.im, d)}; }

inline double ddc_abs(const DDC& a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace diskmean::detail
