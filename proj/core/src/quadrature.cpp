#include "diskmean/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "diskmean/errors.hpp"

namespace diskmean {
namespace {

GaussLegendre compute(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  // Nodes come in +- pairs; solve for the first half from asymptotic guesses.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One polish step keeps nodes at ~1 ulp.
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int n) {
  if (n < 1 || n > 1 << 14) throw ValidationError("GaussLegendre: order outside [1, 16384]");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute(n)).first;
  return it->second;
}

void validate(const QuadratureRule& rule) {
  if (rule.n_rho < 2 || rule.n_theta < 4) {
    throw ValidationError("QuadratureRule: resolution too small");
  }
  if (rule.n_theta % 2 != 0) {
    throw ValidationError("QuadratureRule: n_theta must be even, got " +
                          std::to_string(rule.n_theta));
  }
  if (rule.max_n_rho < rule.n_rho || rule.max_n_theta < rule.n_theta) {
    throw ValidationError("QuadratureRule: caps below starting resolution");
  }
  if (!(rule.rel_tol > 0.0)) throw ValidationError("QuadratureRule: rel_tol must be positive");
}

}  // namespace diskmean
