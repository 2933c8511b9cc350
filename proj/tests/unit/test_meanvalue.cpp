#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "diskmean/errors.hpp"
#include "diskmean/meanvalue.hpp"
#include "diskmean/rng.hpp"

using namespace diskmean;
using C = std::complex<double>;

namespace {
const C kI{0.0, 1.0};

double binom(int n, int j) {
  double acc = 1.0;
  for (int i = 1; i <= j; ++i) acc = acc * (n - j + i) / i;
  return acc;
}

C ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}
}  // namespace

TEST_CASE("constant field integrates to the exact moment") {
  const Field one = Field::monomial(0, 0);
  // s = 0: area mean is r^2 / 2; s >= 1: the weight integrates to zero.
  const auto mv0 = weighted_disk_mean(one, C{0.3, -0.2}, EquationParams{1, 0, 0.8});
  CHECK(std::abs(mv0.value - C{0.32, 0.0}) <= 1e-13);
  const auto mv1 = weighted_disk_mean(one, C{0.3, -0.2}, EquationParams{2, 1, 0.8});
  CHECK(std::abs(mv1.value) <= 1e-14);
}

TEST_CASE("plane-wave disk mean has the Bessel closed form") {
  // (weighted mean of e^{i lambda <zeta, omega>}) =
  //   i^s e^{i alpha s} r^{s+1} J_{s+1}(lambda r) / lambda * f(z).
  for (auto [m, s] : {std::pair{1, 0}, {2, 1}, {3, 2}}) {
    const EquationParams params{m, s, 0.9};
    for (const C lambda : {C{3.0, 0.0}, C{5.0, 1.5}}) {
      const double alpha = 0.6;
      const Field f = Field::plane_wave(lambda, alpha);
      const C z{0.2, 0.4};
      const auto mv = weighted_disk_mean(f, z, params);
      const C want = ipow(s) * std::exp(kI * (alpha * s)) *
                     std::pow(params.r, s + 1) * bessel_j(s + 1, lambda * params.r) /
                     lambda * eval(f, z);
      CHECK(std::abs(mv.value - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("monomial disk mean matches the binomial expansion") {
  // Expanding (z+u)^a (zbar+ubar)^b u^s: only u-powers with j + s = l
  // survive the angular integral.
  const EquationParams params{2, 1, 1.1};
  const C z{0.4, -0.3};
  for (auto [a, b] : {std::pair{3, 2}, {2, 4}, {0, 1}, {5, 5}}) {
    const auto mv = weighted_disk_mean(Field::monomial(a, b), z, params);
    C want{0.0, 0.0};
    for (int j = 0; j <= std::min(a, b - params.s); ++j) {
      const int pw = 2 * (j + params.s) + 2;
      want += binom(a, j) * binom(b, j + params.s) * std::pow(z, a - j) *
              std::pow(std::conj(z), b - j - params.s) * std::pow(params.r, pw) /
              static_cast<double>(pw);
    }
    CHECK(std::abs(mv.value - want) <= 1e-11 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("kernel monomials satisfy the mean-value equation") {
  for (auto [m, s] : {std::pair{2, 0}, {3, 1}}) {
    const EquationParams params{m, s, 0.7};
    for (int k : {-2, 0, 3}) {
      for (const auto& f : kernel_monomials(k, params)) {
        const auto rep = residual(f, C{0.35, 0.15}, params);
        CHECK(satisfies_mean_value(rep));
        CHECK(std::abs(rep.residual) <= 1e-12);
      }
    }
  }
}

TEST_CASE("plane-wave residual obeys the closed-form prediction") {
  Rng rng{0x5EED};
  const EquationParams params{2, 1, 1.0};
  for (int i = 0; i < 20; ++i) {
    const C lambda = rng.in_clipped_annulus(0.5, 12.0, 2.5);
    const double alpha = rng.uniform(0.0, 6.283185307179586);
    const C z = rng.in_disk(1.0);
    const Field f = Field::plane_wave(lambda, alpha);
    const auto rep = residual(f, z, params);
    const C pred = planewave_residual_prediction(lambda, alpha, z, params);
    INFO("lambda=", lambda.real(), "+", lambda.imag(), "i");
    CHECK(std::abs(rep.residual + pred) <= 1e-7 * std::max(1.0, std::abs(pred)));
  }
}

TEST_CASE("calibration constant is the expected unimodular factor") {
  CHECK(std::abs(planewave_calibration_constant(0) - C{1.0, 0.0}) <= 1e-12);
  CHECK(std::abs(planewave_calibration_constant(1) - C{0.0, 1.0}) <= 1e-12);
  CHECK(std::abs(planewave_calibration_constant(2) + C{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("cylinder-wave residual closed form") {
  // residual(CW(lambda, 0, k)) =
  //   -(-1)^s r^{2s+2} lambda^s G(r lambda) J_{k+s}(lambda |z|) e^{i(k+s) arg z}.
  const EquationParams params{2, 1, 0.8};
  const CharFn g(2, 1);
  const C lambda{4.0, 1.0};
  for (int k : {-2, 0, 1}) {
    const Field f = Field::cylinder_wave(lambda, 0, k);
    for (const C z : {C{0.5, 0.3}, C{0.0, 0.0}, C{-0.4, 0.6}}) {
      const auto rep = residual(f, z, params);
      const double sgn = params.s % 2 == 0 ? -1.0 : 1.0;
      const C want = sgn * std::pow(params.r, 2 * params.s + 2) *
                     std::pow(lambda, params.s) * g.eval(params.r * lambda) *
                     bessel_j(k + params.s, lambda * std::abs(z)) *
                     std::exp(kI * ((k + params.s) * std::arg(z)));
      CHECK(std::abs(rep.residual - want) <= 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("angular Fourier coefficients") {
  // Plane wave: coeff_k = e^{-i k alpha} i^k J_k(lambda rho) (Jacobi-Anger).
  const double alpha = 0.9, rho = 0.8;
  const C lambda{2.5, 0.0};
  const Field pw = Field::plane_wave(lambda, alpha);
  for (int k = -3; k <= 3; ++k) {
    const C got = fourier_coeff(pw, k, rho, 256);
    const C want = std::exp(-kI * (k * alpha)) * ipow(k) * bessel_j(k, lambda * rho);
    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
  // Cylinder wave: a single harmonic.
  const Field cw = Field::cylinder_wave(C{3.0, 0.5}, 0, 2);
  const C want2 = bessel_j(2, C{3.0, 0.5} * rho);
  CHECK(std::abs(fourier_coeff(cw, 2, rho, 128) - want2) <= 1e-12 * std::abs(want2));
  CHECK(std::abs(fourier_coeff(cw, 0, rho, 128)) <= 1e-13 * std::abs(want2));
  CHECK(std::abs(fourier_coeff(cw, -2, rho, 128)) <= 1e-13 * std::abs(want2));
}

TEST_CASE("residual of a k-harmonic field is (k+s)-harmonic") {
  const EquationParams params{2, 1, 0.9};
  const int k = 1;
  const Field f = Field::cylinder_wave(C{3.0, 0.5}, 0, k);
  const double rho = 0.45;
  const int n = 8;
  std::vector<C> res(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * 3.14159265358979323846 * j / n;
    res[j] = residual(f, rho * std::exp(kI * t), params).residual;
  }
  // 8-point DFT: all the mass sits in bin k + s.
  double dominant = 0.0, rest = 0.0;
  for (int bin = -3; bin <= 4; ++bin) {
    C acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * 3.14159265358979323846 * j / n;
      acc += res[j] * std::exp(-kI * (bin * t));
    }
    if (bin == k + params.s) {
      dominant = std::abs(acc);
    } else {
      rest = std::max(rest, std::abs(acc));
    }
  }
  CHECK(dominant > 1e-6);
  CHECK(rest <= 1e-5 * dominant);
}

TEST_CASE("identical inputs reproduce identical sums") {
  const Field f = Field::plane_wave(C{6.0, 1.0}, 1.1);
  const EquationParams params{3, 1, 1.0};
  const auto a = weighted_disk_mean(f, C{0.2, 0.6}, params);
  const auto b = weighted_disk_mean(f, C{0.2, 0.6}, params);
  CHECK(a.value == b.value);
  CHECK(a.error == b.error);
  CHECK(a.n_rho == b.n_rho);
  const auto ra = residual(f, C{0.2, 0.6}, params);
  const auto rb = residual(f, C{0.2, 0.6}, params);
  CHECK(ra.residual == rb.residual);
}

TEST_CASE("resolution caps raise after failing to settle") {
  QuadratureRule rule;
  rule.rel_tol = 1e-300;  // unreachable, forces the cap path
  rule.max_n_rho = 128;
  rule.max_n_theta = 512;
  const Field f = Field::plane_wave(C{7.3, 0.0}, 0.2);
  CHECK_THROWS_AS(weighted_disk_mean(f, C{0.1, 0.1}, EquationParams{1, 0, 1.0}, rule),
                  NonConvergenceError);
}

TEST_CASE("tolerance and pass predicate") {
  ResidualReport rep;
  rep.quad_error = 1e-12;
  rep.residual = C{5e-10, 0.0};
  CHECK(residual_tolerance(rep) == 1e-9);
  CHECK(satisfies_mean_value(rep));
  rep.quad_error = 1e-9;
  CHECK(residual_tolerance(rep) == doctest::Approx(3e-9));
  rep.residual = C{4e-9, 0.0};
  CHECK_FALSE(satisfies_mean_value(rep));
}
