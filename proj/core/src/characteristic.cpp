#include "diskmean/characteristic.hpp"

#include <cmath>
#include <string>

#include "diskmean/errors.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;

constexpr int kTailMaxTerms = 80;
constexpr double kTailCutoff = 1e-18;  // next-term magnitude relative to partial sum

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Leading tail coefficient 1 / ((m-s)! (m+1)! 2^{2(m-s)+s+1}) with sign (-1)^{m-s}.
double tail_lead_coeff(int m, int s) {
  const int j0 = m - s;
  double c = 1.0 / (factorial(j0) * factorial(m + 1) * std::ldexp(1.0, 2 * j0 + s + 1));
  return (j0 % 2 == 0) ? c : -c;
}

}  // namespace

void validate(const EquationParams& p) {
  if (p.m < 1 || p.m > 16) {
    throw ValidationError("EquationParams: m = " + std::to_string(p.m) + " outside [1, 16]");
  }
  if (p.s < 0 || p.s > p.m - 1) {
    throw ValidationError("EquationParams: s = " + std::to_string(p.s) +
                          " outside [0, m-1] with m = " + std::to_string(p.m));
  }
  if (!(p.r > 0.0) || !std::isfinite(p.r)) {
    throw ValidationError("EquationParams: r must be positive and finite");
  }
}

CharFn::CharFn(int m, int s, const Envelope& env) : m_(m), s_(s), env_(env) {
  validate(EquationParams{m, s, 1.0});
  threshold_ = std::max(6.0, 2.0 * (m - s) + 4.0);
}

C CharFn::eval_tail(C w) const {
  const C wsq = w * w;
  const int j0 = m_ - s_;
  // term_j for j = j0, then ratio t_{j+1}/t_j = -w^2 / (4 (j+1) (j+s+2)).
  C term(tail_lead_coeff(m_, s_), 0.0);
  for (int t = 0; t < j0; ++t) term *= wsq;

  C sum = term, comp(0.0, 0.0);
  for (int j = j0; j < j0 + kTailMaxTerms; ++j) {
    term *= -wsq;
    term /= 4.0 * static_cast<double>(j + 1) * static_cast<double>(j + s_ + 2);
    if (std::abs(term) <= kTailCutoff * std::abs(sum)) return sum;
    const C y = term - comp;
    const C t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  throw NonConvergenceError("CharFn: tail series did not converge within 80 terms");
}

C CharFn::eval_bessel(C w) const {
  // P(w): the first m-s Taylor terms of J_{s+1}(w)/w^{s+1}, Horner in w^2.
  const C wsq = w * w;
  const int j0 = m_ - s_;
  C poly(0.0, 0.0);
  for (int j = j0 - 1; j >= 0; --j) {
    const double c =
        1.0 / (factorial(j) * factorial(j + s_ + 1) * std::ldexp(1.0, 2 * j + s_ + 1));
    const double cs = (j % 2 == 0) ? c : -c;
    poly = poly * wsq + cs;
  }
  C wp(1.0, 0.0);
  for (int t = 0; t <= s_; ++t) wp *= w;
  return bessel_j(s_ + 1, w, env_) / wp - poly;
}

C CharFn::eval_tail_deriv(C w) const {
  const C wsq = w * w;
  const int j0 = m_ - s_;
  // d/dw of the tail: sum_j 2j c_j w^{2j-1}, built from the same coefficients.
  C cj(tail_lead_coeff(m_, s_), 0.0);
  C wpow(1.0, 0.0);
  for (int t = 0; t < 2 * j0 - 1; ++t) wpow *= w;
  C term = cj * (2.0 * j0) * wpow;
  C sum = term;
  C cterm = cj;
  for (int j = j0; j < j0 + kTailMaxTerms; ++j) {
    cterm *= -1.0 / (4.0 * static_cast<double>(j + 1) * static_cast<double>(j + s_ + 2));
    wpow *= wsq;
    term = cterm * (2.0 * static_cast<double>(j + 1)) * wpow;
    if (std::abs(term) <= kTailCutoff * (std::abs(sum) + 1e-300)) return sum;
    sum += term;
  }
  throw NonConvergenceError("CharFn: tail derivative series did not converge within 80 terms");
}

C CharFn::eval_bessel_deriv(C w) const {
  // d/dw [J_nu(w)/w^nu] = -J_{nu+1}(w)/w^nu, nu = s+1; minus P'(w).
  const C wsq = w * w;
  const int j0 = m_ - s_;
  C dpoly(0.0, 0.0);
  for (int j = j0 - 1; j >= 1; --j) {
    const double c =
        2.0 * j / (factorial(j) * factorial(j + s_ + 1) * std::ldexp(1.0, 2 * j + s_ + 1));
    const double cs = (j % 2 == 0) ? c : -c;
    dpoly = dpoly * wsq + cs;
  }
  dpoly *= w;
  C wp(1.0, 0.0);
  for (int t = 0; t <= s_; ++t) wp *= w;
  return -bessel_j(s_ + 2, w, env_) / wp - dpoly;
}

C CharFn::eval(C w) const {
  return (std::abs(w) <= threshold_) ? eval_tail(w) : eval_bessel(w);
}

C CharFn::eval_deriv(C w) const {
  return (std::abs(w) <= threshold_) ? eval_tail_deriv(w) : eval_bessel_deriv(w);
}

C eval_g(const EquationParams& p, C z, const Envelope& env) {
  validate(p);
  return CharFn(p.m, p.s, env).eval(p.r * z);
}

C eval_g_deriv(const EquationParams& p, C z, const Envelope& env) {
  validate(p);
  return p.r * CharFn(p.m, p.s, env).eval_deriv(p.r * z);
}

}  // namespace diskmean
