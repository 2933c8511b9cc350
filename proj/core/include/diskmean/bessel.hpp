#pragma once

#include <complex>

namespace diskmean {

/// Region of the complex plane inside which evaluations hold their stated
/// accuracy (~1e-12 relative away from zeros of the function). Wider
/// envelopes are legitimate (zero scans need them); accuracy then rests on
/// the same methods and is exercised by the tests at the widened bounds.
struct Envelope {
  double max_abs = 50.0;
  double max_imag = 10.0;
};

/// J_k(w) for integer k (any sign) and complex w inside the envelope.
///
/// Evaluation bands: plain power series with compensated accumulation for
/// small |w|; double-double power series up to |w| <= 25 where alternating
/// cancellation exceeds plain doubles; normalised backward recurrence beyond.
/// Negative orders reduce via J_{-k} = (-1)^k J_k.
std::complex<double> bessel_j(int k, std::complex<double> w, const Envelope& env = {});

/// eta-th derivative of J_k at w, via the binomial expansion of repeated
/// J_k' = (J_{k-1} - J_{k+1})/2. Requires 0 <= eta <= 8.
std::complex<double> bessel_j_deriv(int k, int eta, std::complex<double> w,
                                    const Envelope& env = {});

/// phi(lambda, eta, k, rho) = rho^eta * J_k^(eta)(lambda * rho):
/// the eta-th derivative in lambda of lambda -> J_k(lambda * rho).
/// The envelope constraint applies to the product lambda * rho.
std::complex<double> phi(std::complex<double> lambda, int eta, int k, double rho,
                         const Envelope& env = {});

}  // namespace diskmean
