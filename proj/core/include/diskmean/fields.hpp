#pragma once

#include <complex>
#include <vector>

#include "diskmean/bessel.hpp"
#include "diskmean/characteristic.hpp"

namespace diskmean {

enum class FieldKind { PlaneWave, CylinderWave, Monomial, Superposition };

/// A closed-under-superposition family of test fields on the plane:
///   PlaneWave(lambda, alpha):    exp(i lambda (x cos alpha + y sin alpha))
///   CylinderWave(lambda, eta, k): phi(lambda, eta, k, |z|) * exp(i k arg z)
///   Monomial(a, b):              z^a * conj(z)^b
///   Superposition:               sum_i coeff[i] * part[i]
/// Superpositions flatten on construction, so nesting depth stays <= 2.
struct Field {
  FieldKind kind = FieldKind::Monomial;

  std::complex<double> lambda{0.0, 0.0};  // PlaneWave, CylinderWave
  double alpha = 0.0;                     // PlaneWave
  int eta = 0;                            // CylinderWave, in [0, 8]
  int k = 0;                              // CylinderWave harmonic index
  int a = 0, b = 0;                       // Monomial exponents, >= 0

  std::vector<std::complex<double>> coeff;  // Superposition
  std::vector<Field> part;                  // Superposition (leaves only)

  static Field plane_wave(std::complex<double> lambda, double alpha);
  static Field cylinder_wave(std::complex<double> lambda, int eta, int k);
  static Field monomial(int a, int b);
  static Field superposition(std::vector<std::complex<double>> coeff, std::vector<Field> part);
};

/// (d/dz)^p (d/dzbar)^q with d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.
struct DerivOrder {
  int p = 0;
  int q = 0;
};

std::complex<double> eval(const Field& f, std::complex<double> z, const Envelope& env = {});

/// Closed-form Wirtinger derivative of order (p, q).
std::complex<double> wirtinger(const Field& f, std::complex<double> z, DerivOrder ord,
                               const Envelope& env = {});

/// Finite-difference Wirtinger derivative: nested 4th-order central stencils.
/// Requires p + q <= 4 and h in [1e-5, 1e-2]. Oracle-grade, not fast.
std::complex<double> wirtinger_fd(const Field& f, std::complex<double> z, DerivOrder ord,
                                  double h, const Envelope& env = {});

/// Default finite-difference step: 1e-4 * max(1, |z|). Balances truncation
/// against rounding for p + q <= 2; higher orders want a larger step.
double default_fd_step(std::complex<double> z);

/// Monomials of harmonic index k annihilated by (d/dz)^{m-s} (d/dzbar)^m and
/// satisfying the mean-value equation for every radius. Two families:
///   z^{p+k} conj(z)^p          for 0 <= p <= s-1 (requires p+k >= 0),
///   z^{p+s+k} conj(z)^{p+s}    for 0 <= p <= m-s-1, when k+s >= 0,
///   z^p conj(z)^{p-k}          for 0 <= p <= m-s-1, when k+s < 0.
std::vector<Field> kernel_monomials(int k, const EquationParams& p);

}  // namespace diskmean
