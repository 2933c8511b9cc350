#pragma once

#include <complex>
#include <functional>

#include "diskmean/characteristic.hpp"
#include "diskmean/fields.hpp"
#include "diskmean/quadrature.hpp"

namespace diskmean {

/// Result of an adaptively refined disk integral.
struct MeanValue {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;  // absolute two-resolution difference at the final level
  int n_rho = 0;
  int n_theta = 0;
};

/// (1/2pi) * integral over |zeta - z| <= r of f(zeta) (zeta - z)^s dxi deta,
/// in polar form: radial Gauss-Legendre on [0, r], uniform trapezoid in angle
/// (spectrally accurate for periodic integrands). Resolution doubles until
/// the two-resolution difference is <= rule.rel_tol * max(1, |value|) or the
/// caps are reached; past the caps a change above 1e3 * tolerance raises
/// NonConvergenceError.
MeanValue weighted_disk_mean(const std::function<std::complex<double>(std::complex<double>)>& f,
                             std::complex<double> z, const EquationParams& params,
                             const QuadratureRule& rule = {});

MeanValue weighted_disk_mean(const Field& f, std::complex<double> z,
                             const EquationParams& params, const QuadratureRule& rule = {},
                             const Envelope& env = {});

/// sum_{n=s}^{m-1} r^{2n+2} / (2 (n-s)! (n+1)!) * (d/dz)^{n-s} (d/dzbar)^n f(z).
std::complex<double> derivative_sum(const Field& f, std::complex<double> z,
                                    const EquationParams& params, const Envelope& env = {});

/// residual = derivative_sum - weighted_disk_mean. A field satisfies the
/// mean-value equation at z when |residual| <= max(1e-9, 3 * quad_error).
struct ResidualReport {
  std::complex<double> lhs{0.0, 0.0};       // derivative sum
  std::complex<double> rhs{0.0, 0.0};       // weighted disk mean
  std::complex<double> residual{0.0, 0.0};  // lhs - rhs
  double quad_error = 0.0;
  int n_rho = 0;
  int n_theta = 0;
};

ResidualReport residual(const Field& f, std::complex<double> z, const EquationParams& params,
                        const QuadratureRule& rule = {}, const Envelope& env = {});

double residual_tolerance(const ResidualReport& rep);
bool satisfies_mean_value(const ResidualReport& rep);

/// Closed-form prediction of -residual(PlaneWave(lambda, alpha), z):
///   kappa(s) * g_r(lambda) * e^{i alpha s} * r^{2s+2} * lambda^s * f(z),
/// with the unimodular constant kappa(s) in {1, i, -1, -i} * i^s calibrated
/// once per s against the quadrature at a fixed reference point and then
/// cached. Requires |lambda| >= 1e-6.
std::complex<double> planewave_residual_prediction(std::complex<double> lambda, double alpha,
                                                   std::complex<double> z,
                                                   const EquationParams& params,
                                                   const Envelope& env = {});

/// The calibrated kappa(s) itself (exposed for tests and reports).
std::complex<double> planewave_calibration_constant(int s);

/// k-th angular Fourier coefficient of f on the circle of radius rho:
/// (1/n_theta) sum_j f(rho e^{i t_j}) e^{-i k t_j}. Warns on stderr when
/// |k| > n_theta / 4 (aliasing risk).
std::complex<double> fourier_coeff(const Field& f, int k, double rho, int n_theta,
                                   const Envelope& env = {});

}  // namespace diskmean
