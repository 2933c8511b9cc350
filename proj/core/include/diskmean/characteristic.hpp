#pragma once

#include <complex>

#include "diskmean/bessel.hpp"

namespace diskmean {

/// Parameters of one weighted mean-value equation: derivative block size m,
/// weight exponent s (0 <= s <= m-1), disk radius r > 0.
struct EquationParams {
  int m = 1;
  int s = 0;
  double r = 1.0;
};

/// Throws ValidationError unless 0 <= s <= m-1, m <= 16 and r > 0.
void validate(const EquationParams& p);

/// Canonical characteristic function G of the equation family, normalised to
/// radius 1: the radius-r function is g_r(z) = G(r z).
///
/// Two representations, exact rearrangements of one another:
///   Bessel form:   G(w) = J_{s+1}(w)/w^{s+1} - P(w), with P the first
///                  (m-s) Taylor terms of J_{s+1}(w)/w^{s+1};
///   tail series:   G(w) = sum_{j >= m-s} (-1)^j w^{2j} / (j! (j+s+1)! 2^{2j+s+1}).
/// The tail series is used for |w| <= series_threshold(), where the Bessel
/// form would cancel catastrophically; the Bessel form elsewhere.
///
/// G is even with real Taylor coefficients and has a zero of multiplicity
/// exactly 2(m-s) at the origin.
class CharFn {
 public:
  CharFn(int m, int s, const Envelope& env = {});

  int m() const { return m_; }
  int s() const { return s_; }
  const Envelope& envelope() const { return env_; }

  /// Representation switch radius: max(6, 2(m-s) + 4).
  double series_threshold() const { return threshold_; }

  std::complex<double> eval(std::complex<double> w) const;
  std::complex<double> eval_deriv(std::complex<double> w) const;

  /// Individual representations, exposed so tests can verify their overlap
  /// agreement directly. eval() dispatches between them at the threshold.
  std::complex<double> eval_tail(std::complex<double> w) const;
  std::complex<double> eval_bessel(std::complex<double> w) const;
  std::complex<double> eval_tail_deriv(std::complex<double> w) const;
  std::complex<double> eval_bessel_deriv(std::complex<double> w) const;

 private:
  int m_;
  int s_;
  double threshold_;
  Envelope env_;
};

/// g_r(z) = G(r z) for the given parameters.
std::complex<double> eval_g(const EquationParams& p, std::complex<double> z,
                            const Envelope& env = {});

/// g_r'(z) = r G'(r z).
std::complex<double> eval_g_deriv(const EquationParams& p, std::complex<double> z,
                                  const Envelope& env = {});

}  // namespace diskmean
