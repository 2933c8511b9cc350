#include "diskmean/bessel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "diskmean/detail/ddcomplex.hpp"
#include "diskmean/errors.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;

constexpr int kMaxOrder = 128;
// Band edges. Below kPlainSeriesMax the alternating series loses < ~3 digits
// and plain doubles with compensated accumulation reach ~1e-13 relative;
// up to kSeriesMax the cancellation ratio grows to ~1e10 and the series runs
// in double-double; beyond, backward recurrence is both stable and cheap.
constexpr double kPlainSeriesMax = 6.0;
constexpr double kSeriesMax = 25.0;
constexpr int kSeriesMaxTerms = 220;

void check_envelope(C w, const Envelope& env) {
  if (std::abs(w) > env.max_abs || std::abs(w.imag()) > env.max_imag) {
    throw EnvelopeError("bessel_j: argument (" + std::to_string(w.real()) + ", " +
                        std::to_string(w.imag()) + "i) outside envelope |w| <= " +
                        std::to_string(env.max_abs) + ", |Im w| <= " +
                        std::to_string(env.max_imag));
  }
}

// J_k via the ascending series, plain doubles, Kahan-compensated accumulation.
C series_plain(int k, C w) {
  const C u = 0.5 * w;
  const C musq = -(u * u);
  C pref(1.0, 0.0);
  for (int j = 1; j <= k; ++j) pref *= u / static_cast<double>(j);

  C term(1.0, 0.0), sum(1.0, 0.0), comp(0.0, 0.0);
  const double growth_end = std::abs(u);
  for (int j = 1; j < kSeriesMaxTerms; ++j) {
    term *= musq;
    term /= static_cast<double>(j) * static_cast<double>(j + k);
    const C y = term - comp;
    const C t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (j > growth_end && std::abs(term) <= 1e-18 * std::abs(sum)) return pref * sum;
  }
  throw NonConvergenceError("bessel_j: power series did not converge");
}

// Same series in double-double for the cancellation-heavy middle band.
C series_dd(int k, C w) {
  using namespace detail;
  const C u2 = 0.5 * w;
  const DDC u = ddc_from(u2);
  DDC musq = ddc_mul(u, u);
  musq.re = dd_neg(musq.re);
  musq.im = dd_neg(musq.im);

  DDC pref = ddc_from(C(1.0, 0.0));
  for (int j = 1; j <= k; ++j) pref = ddc_div_d(ddc_mul(pref, u), static_cast<double>(j));

  DDC term = ddc_from(C(1.0, 0.0));
  DDC sum = term;
  const double growth_end = std::abs(u2);
  for (int j = 1; j < kSeriesMaxTerms; ++j) {
    term = ddc_mul(term, musq);
    term = ddc_div_d(term, static_cast<double>(j) * static_cast<double>(j + k));
    sum = ddc_add(sum, term);
    if (j > growth_end && ddc_abs(term) <= 1e-33 * ddc_abs(sum)) {
      return ddc_to_complex(ddc_mul(pref, sum));
    }
  }
  throw NonConvergenceError("bessel_j: double-double power series did not converge");
}

// ln of the leading-order magnitude of J_n(w) for n >= |w| (series first term).
double ln_minimal_solution(int n, double absw) {
  return n * std::log(0.5 * absw) - std::lgamma(static_cast<double>(n) + 1.0);
}

// Backward (Miller-type) recurrence. The ladder is normalised against the
// best-conditioned of three ladder identities:
//   1 = J_0 + 2 sum J_{2j},  e^{iw} = sum i^n-weighted,  e^{-iw} likewise.
// A single-value anchor (e.g. matching J_0 alone) breaks down near real zeros
// of that anchor order, so the summed identities are used instead.
C miller(int k, C w) {
  const double absw = std::abs(w);
  const double lnpeak = std::abs(w.imag()) - 0.5 * std::log(std::max(absw, 1.0));
  int M = std::max(k, static_cast<int>(std::ceil(absw))) + 5;
  while (ln_minimal_solution(M, absw) > lnpeak - 48.0 && M < 2000) ++M;
  if (M >= 2000) throw NonConvergenceError("bessel_j: recurrence start index overflow");

  static constexpr C kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // i^n mod 4
  const C two_over_w = 2.0 / w;
  C jp(0.0, 0.0);    // ~ J_{n+1}, unnormalised
  C jc(1e-250, 0.0); // ~ J_n
  C jk(0.0, 0.0);    // saved at n == k
  C s_neu = (M % 2 == 0) ? 2.0 * jc : C(0.0, 0.0);
  C s_plus = 2.0 * kIPow[M & 3] * jc;
  C s_minus = 2.0 * std::conj(kIPow[M & 3]) * jc;  // (-i)^n = conj(i^n)
  if (M == k) jk = jc;

  for (int n = M; n >= 1; --n) {
    const C jm = static_cast<double>(n) * two_over_w * jc - jp;
    jp = jc;
    jc = jm;
    const int nm1 = n - 1;
    if (nm1 == k) jk = jc;
    if (nm1 == 0) {
      s_neu += jc;
      s_plus += jc;
      s_minus += jc;
    } else {
      if (nm1 % 2 == 0) s_neu += 2.0 * jc;
      s_plus += 2.0 * kIPow[nm1 & 3] * jc;
      s_minus += 2.0 * std::conj(kIPow[nm1 & 3]) * jc;
    }
  }

  C scale;
  if (w.imag() > 0.25) {
    scale = s_minus / std::exp(C(0, -1) * w);
  } else if (w.imag() < -0.25) {
    scale = s_plus / std::exp(C(0, 1) * w);
  } else {
    scale = s_neu;
  }
  return jk / scale;
}

}  // namespace

C bessel_j(int k, C w, const Envelope& env) {
  if (k < 0) {
    const C v = bessel_j(-k, w, env);
    return (k % 2 == 0) ? v : -v;
  }
  if (k > kMaxOrder) {
    throw ValidationError("bessel_j: order " + std::to_string(k) + " exceeds supported bound " +
                          std::to_string(kMaxOrder));
  }
  check_envelope(w, env);
  const double absw = std::abs(w);
  if (absw <= kPlainSeriesMax) return series_plain(k, w);
  if (absw <= kSeriesMax) return series_dd(k, w);
  return miller(k, w);
}

C bessel_j_deriv(int k, int eta, C w, const Envelope& env) {
  if (eta < 0 || eta > 8) {
    throw ValidationError("bessel_j_deriv: derivative order " + std::to_string(eta) +
                          " outside [0, 8]");
  }
  if (std::abs(k) + eta > kMaxOrder) {
    throw ValidationError("bessel_j_deriv: |k| + eta exceeds supported order bound");
  }
  if (eta == 0) return bessel_j(k, w, env);

  // eta-fold application of J_k' = (J_{k-1} - J_{k+1})/2:
  // J_k^(eta) = 2^-eta * sum_i (-1)^i C(eta, i) J_{k - eta + 2i}.
  static constexpr double kBinom[9][9] = {
      {1},
      {1, 1},
      {1, 2, 1},
      {1, 3, 3, 1},
      {1, 4, 6, 4, 1},
      {1, 5, 10, 10, 5, 1},
      {1, 6, 15, 20, 15, 6, 1},
      {1, 7, 21, 35, 35, 21, 7, 1},
      {1, 8, 28, 56, 70, 56, 28, 8, 1},
  };
  C sum(0.0, 0.0);
  for (int i = 0; i <= eta; ++i) {
    const double c = (i % 2 == 0) ? kBinom[eta][i] : -kBinom[eta][i];
    sum += c * bessel_j(k - eta + 2 * i, w, env);
  }
  return sum * std::ldexp(1.0, -eta);
}

C phi(C lambda, int eta, int k, double rho, const Envelope& env) {
  if (rho < 0.0) throw ValidationError("phi: rho must be nonnegative");
  return std::pow(rho, eta) * bessel_j_deriv(k, eta, lambda * rho, env);
}

}  // namespace diskmean
