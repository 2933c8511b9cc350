#include "diskmean/meanvalue.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "diskmean/errors.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

C cpow_int(C base, int n) {
  C acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) acc *= base;
  return acc;
}

struct FixedMean {
  C value;
  double abs_mass;  // quadrature of |integrand|, the scale roundoff acts on
};

// Fixed-resolution polar evaluation of the weighted disk mean.
FixedMean disk_mean_fixed(const std::function<C(C)>& f, C z, int s, double r, int n_rho,
                          int n_theta) {
  const GaussLegendre& gl = GaussLegendre::get(n_rho);
  // Angular nodes t_j = -pi + 2 pi j / n_theta and the phase e^{i s t_j}.
  std::vector<C> ring(n_theta);
  std::vector<C> sphase(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    const double t = -kPi + 2.0 * kPi * j / n_theta;
    ring[j] = C(std::cos(t), std::sin(t));
    sphase[j] = (s == 0) ? C(1.0, 0.0) : C(std::cos(s * t), std::sin(s * t));
  }
  C acc(0.0, 0.0);
  double mass = 0.0;
  for (int i = 0; i < n_rho; ++i) {
    const double rho = 0.5 * r * (gl.nodes[i] + 1.0);
    const double wr = 0.5 * r * gl.weights[i];
    C ring_acc(0.0, 0.0);
    double ring_mass = 0.0;
    for (int j = 0; j < n_theta; ++j) {
      const C v = f(z + rho * ring[j]);
      ring_acc += v * sphase[j];
      ring_mass += std::abs(v);
    }
    const double w = wr * std::pow(rho, s + 1);
    acc += w * ring_acc;
    mass += w * ring_mass;
  }
  // (1/2pi) * (2pi / n_theta) angular weight = 1 / n_theta.
  const double n = static_cast<double>(n_theta);
  return FixedMean{acc / n, mass / n};
}

}  // namespace

MeanValue weighted_disk_mean(const std::function<C(C)>& f, C z, const EquationParams& params,
                             const QuadratureRule& rule) {
  validate(params);
  validate(rule);
  int nr = rule.n_rho, nt = rule.n_theta;
  C prev = disk_mean_fixed(f, z, params.s, params.r, nr / 2, nt / 2).value;
  FixedMean cur = disk_mean_fixed(f, z, params.s, params.r, nr, nt);
  double diff = std::abs(cur.value - prev);
  while (diff > rule.rel_tol * std::max(1.0, std::abs(cur.value)) &&
         (2 * nr <= rule.max_n_rho && 2 * nt <= rule.max_n_theta)) {
    nr *= 2;
    nt *= 2;
    prev = cur.value;
    cur = disk_mean_fixed(f, z, params.s, params.r, nr, nt);
    diff = std::abs(cur.value - prev);
  }
  if (diff > 1e3 * rule.rel_tol * std::max(1.0, std::abs(cur.value))) {
    throw NonConvergenceError(
        "weighted_disk_mean: resolution cap reached with two-resolution difference " +
        std::to_string(diff));
  }
  // The node-doubling difference measures truncation only; the reported
  // estimate is floored at the summation roundoff scale so it stays honest
  // for integrands with large absolute mass and near-total cancellation.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * cur.abs_mass;
  return MeanValue{cur.value, std::max(diff, floor), nr, nt};
}

MeanValue weighted_disk_mean(const Field& f, C z, const EquationParams& params,
                             const QuadratureRule& rule, const Envelope& env) {
  return weighted_disk_mean([&](C zeta) { return eval(f, zeta, env); }, z, params, rule);
}

C derivative_sum(const Field& f, C z, const EquationParams& params, const Envelope& env) {
  validate(params);
  C acc(0.0, 0.0);
  for (int n = params.s; n < params.m; ++n) {
    const double c = std::pow(params.r, 2 * n + 2) /
                     (2.0 * factorial(n - params.s) * factorial(n + 1));
    acc += c * wirtinger(f, z, DerivOrder{n - params.s, n}, env);
  }
  return acc;
}

ResidualReport residual(const Field& f, C z, const EquationParams& params,
                        const QuadratureRule& rule, const Envelope& env) {
  ResidualReport rep;
  rep.lhs = derivative_sum(f, z, params, env);
  const MeanValue mv = weighted_disk_mean(f, z, params, rule, env);
  rep.rhs = mv.value;
  rep.residual = rep.lhs - rep.rhs;
  rep.quad_error = mv.error;
  rep.n_rho = mv.n_rho;
  rep.n_theta = mv.n_theta;
  return rep;
}

double residual_tolerance(const ResidualReport& rep) {
  return std::max(1e-9, 3.0 * rep.quad_error);
}

bool satisfies_mean_value(const ResidualReport& rep) {
  return std::abs(rep.residual) <= residual_tolerance(rep);
}

namespace {

// kappa(s) cache. The constant is radius- and m-independent; the calibration
// instance uses m = s+1 at a fixed reference point.
std::array<std::optional<C>, 17> g_kappa;
std::mutex g_kappa_mu;

C calibrate_kappa(int s) {
  const EquationParams params{s + 1, s, 1.0};
  const C lambda(1.7, 0.0);
  const double alpha = 0.3;
  const C z(0.2, 0.1);
  const Field pw = Field::plane_wave(lambda, alpha);

  const ResidualReport rep = residual(pw, z, params);
  const C target = -rep.residual;
  C shape = eval_g(params, lambda) * std::exp(C(0, alpha * s)) *
            std::pow(params.r, 2 * s + 2) * cpow_int(lambda, s) * eval(pw, z);

  // candidates {1, i, -1, -i} * i^s
  const C i_unit(0.0, 1.0);
  C is(1.0, 0.0);
  for (int t = 0; t < (s & 3); ++t) is *= i_unit;
  C best(0.0, 0.0);
  double best_err = std::numeric_limits<double>::infinity();
  C rot(1.0, 0.0);
  for (int t = 0; t < 4; ++t) {
    const C kappa = rot * is;
    const double e = std::abs(kappa * shape - target);
    if (e < best_err) {
      best_err = e;
      best = kappa;
    }
    rot *= i_unit;
  }
  if (best_err > 1e-6 * std::max(1.0, std::abs(target))) {
    throw NonConvergenceError(
        "planewave_residual_prediction: calibration did not match the quadrature (defect " +
        std::to_string(best_err) + ")");
  }
  return best;
}

}  // namespace

C planewave_calibration_constant(int s) {
  if (s < 0 || s > 15) throw ValidationError("planewave_calibration_constant: s outside [0, 15]");
  std::lock_guard<std::mutex> lock(g_kappa_mu);
  if (!g_kappa[s]) g_kappa[s] = calibrate_kappa(s);
  return *g_kappa[s];
}

C planewave_residual_prediction(C lambda, double alpha, C z, const EquationParams& params,
                                const Envelope& env) {
  validate(params);
  if (std::abs(lambda) < 1e-6) {
    throw ValidationError("planewave_residual_prediction: |lambda| below 1e-6");
  }
  const C kappa = planewave_calibration_constant(params.s);
  const Field pw = Field::plane_wave(lambda, alpha);
  return kappa * eval_g(params, lambda, env) * std::exp(C(0, alpha * params.s)) *
         std::pow(params.r, 2 * params.s + 2) * cpow_int(lambda, params.s) * eval(pw, z);
}

C fourier_coeff(const Field& f, int k, double rho, int n_theta, const Envelope& env) {
  if (n_theta < 4) throw ValidationError("fourier_coeff: n_theta must be at least 4");
  if (rho < 0.0) throw ValidationError("fourier_coeff: rho must be nonnegative");
  if (4 * std::abs(k) > n_theta) {
    std::cerr << "fourier_coeff: |k| = " << std::abs(k) << " exceeds n_theta/4 = "
              << n_theta / 4 << "; aliasing likely\n";
  }
  C acc(0.0, 0.0);
  for (int j = 0; j < n_theta; ++j) {
    const double t = -kPi + 2.0 * kPi * j / n_theta;
    acc += eval(f, rho * C(std::cos(t), std::sin(t)), env) * C(std::cos(k * t), -std::sin(k * t));
  }
  return acc / static_cast<double>(n_theta);
}

}  // namespace diskmean
