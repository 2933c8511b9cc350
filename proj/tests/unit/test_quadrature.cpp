#include <doctest.h>

#include <cmath>
#include <complex>

#include "diskmean/bessel.hpp"
#include "diskmean/errors.hpp"
#include "diskmean/quadrature.hpp"

using namespace diskmean;
using C = std::complex<double>;

TEST_CASE("weights sum to the interval length") {
  for (int n : {1, 2, 7, 16, 64, 256}) {
    const auto& gl = GaussLegendre::get(n);
    REQUIRE(gl.nodes.size() == static_cast<size_t>(n));
    REQUIRE(gl.weights.size() == static_cast<size_t>(n));
    double sum = 0.0;
    for (double w : gl.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("nodes are symmetric and inside the interval") {
  const auto& gl = GaussLegendre::get(33);
  for (int i = 0; i < 33; ++i) {
    CHECK(std::abs(gl.nodes[i] + gl.nodes[32 - i]) <= 1e-15);
    CHECK(std::abs(gl.weights[i] - gl.weights[32 - i]) <= 1e-15);
    CHECK(gl.nodes[i] > -1.0);
    CHECK(gl.nodes[i] < 1.0);
  }
  CHECK(gl.nodes[16] == 0.0);
}

TEST_CASE("exact for polynomials up to degree 2n-1") {
  const int n = 8;
  const auto& gl = GaussLegendre::get(n);
  for (int k = 0; k <= 15; ++k) {
    double got = 0.0;
    for (int i = 0; i < n; ++i) got += gl.weights[i] * std::pow(gl.nodes[i], k);
    const double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(got - want) <= 1e-13);
  }
}

TEST_CASE("rules are cached by order") {
  const auto* a = &GaussLegendre::get(64);
  const auto* b = &GaussLegendre::get(64);
  CHECK(a == b);
  CHECK_THROWS_AS(GaussLegendre::get(0), ValidationError);
}

TEST_CASE("radial integral identity") {
  // int_0^1 rho^{s+1} J_s(lambda rho) drho = J_{s+1}(lambda) / lambda,
  // the identity every disk mean in the library reduces to.
  const auto& gl = GaussLegendre::get(40);
  for (int s : {0, 1, 2}) {
    for (const C lambda : {C{5.0, 0.0}, C{3.0, 1.0}}) {
      C got{0.0, 0.0};
      for (size_t i = 0; i < gl.nodes.size(); ++i) {
        const double rho = 0.5 * (gl.nodes[i] + 1.0);
        got += 0.5 * gl.weights[i] * std::pow(rho, s + 1) * bessel_j(s, lambda * rho);
      }
      const C want = bessel_j(s + 1, lambda) / lambda;
      CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
    }
  }
}

TEST_CASE("quadrature rule validation") {
  CHECK_NOTHROW(validate(QuadratureRule{}));
  QuadratureRule r;
  r.n_rho = 0;
  CHECK_THROWS_AS(validate(r), ValidationError);
  r = {};
  r.n_theta = 255;  // must stay even for the trapezoid pairing
  CHECK_THROWS_AS(validate(r), ValidationError);
  r = {};
  r.rel_tol = 0.0;
  CHECK_THROWS_AS(validate(r), ValidationError);
  r = {};
  r.max_n_rho = 32;  // cap below the starting resolution
  CHECK_THROWS_AS(validate(r), ValidationError);
}
