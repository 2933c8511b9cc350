#pragma once

#include <vector>

namespace diskmean {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the three-term Legendre recurrence and cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Cached rule of order n (n >= 1). Thread-safe.
  static const GaussLegendre& get(int n);
};

/// Resolution policy for disk integrals: start at (n_rho, n_theta), double
/// both until the two-resolution difference is at most rel_tol relative to
/// max(1, |value|), stop at the caps.
struct QuadratureRule {
  int n_rho = 64;
  int n_theta = 256;  // must be even
  double rel_tol = 1e-11;
  int max_n_rho = 512;
  int max_n_theta = 2048;
};

void validate(const QuadratureRule& rule);

}  // namespace diskmean
