#include <doctest.h>

#include <cmath>
#include <complex>

#include "diskmean/errors.hpp"
#include "diskmean/fields.hpp"

using namespace diskmean;
using C = std::complex<double>;

namespace {
const C kI{0.0, 1.0};
}

TEST_CASE("evaluation of the three leaf kinds") {
  const C z{0.3, -0.4};

  const Field pw = Field::plane_wave(C{2.0, 0.5}, 0.7);
  const C dir{std::cos(0.7), std::sin(0.7)};
  const C want = std::exp(kI * C{2.0, 0.5} * (z.real() * dir.real() + z.imag() * dir.imag()));
  CHECK(std::abs(eval(pw, z) - want) <= 1e-15 * std::abs(want));

  const Field mono = Field::monomial(3, 2);
  const C wantm = z * z * z * std::conj(z) * std::conj(z);
  CHECK(std::abs(eval(mono, z) - wantm) <= 1e-15 * std::abs(wantm));

  // Cylinder waves are radially a Bessel profile; at the origin only the
  // k = 0 mode survives.
  const Field cw0 = Field::cylinder_wave(C{5.0, 1.0}, 0, 0);
  const Field cw2 = Field::cylinder_wave(C{5.0, 1.0}, 0, 2);
  CHECK(eval(cw0, C{0.0, 0.0}) == C{1.0, 0.0});
  CHECK(eval(cw2, C{0.0, 0.0}) == C{0.0, 0.0});
  const C at = eval(cw2, z);
  const double rho = std::abs(z);
  const C wantc = bessel_j(2, C{5.0, 1.0} * rho) * std::exp(2.0 * kI * std::arg(z));
  CHECK(std::abs(at - wantc) <= 1e-13 * std::abs(wantc));
}

TEST_CASE("superpositions flatten to depth one") {
  const Field inner = Field::superposition({C{3.0, 0.0}}, {Field::monomial(1, 0)});
  const Field outer =
      Field::superposition({C{2.0, 0.0}, C{5.0, 0.0}},
                           {Field::plane_wave(C{1.0, 0.0}, 0.0), inner});
  REQUIRE(outer.part.size() == 2);
  CHECK(outer.part[0].kind == FieldKind::PlaneWave);
  CHECK(outer.part[1].kind == FieldKind::Monomial);
  CHECK(outer.coeff[1] == C{15.0, 0.0});

  const C z{0.2, 0.1};
  const C direct = 2.0 * eval(outer.part[0], z) + 15.0 * eval(Field::monomial(1, 0), z);
  CHECK(std::abs(eval(outer, z) - direct) <= 1e-15 * std::abs(direct));
}

TEST_CASE("closed-form derivatives against finite differences") {
  struct Case {
    Field f;
    DerivOrder ord;
  };
  const Case cases[] = {
      {Field::plane_wave(C{2.0, 1.0}, 0.7), {1, 0}},
      {Field::plane_wave(C{2.0, 1.0}, 0.7), {0, 2}},
      {Field::plane_wave(C{4.0, -0.5}, 2.1), {2, 1}},
      {Field::cylinder_wave(C{3.0, 0.5}, 0, 2), {1, 0}},
      {Field::cylinder_wave(C{3.0, 0.5}, 0, -1), {1, 1}},
      {Field::cylinder_wave(C{2.5, 0.0}, 1, 1), {0, 1}},
      {Field::monomial(3, 2), {2, 1}},
      {Field::monomial(5, 0), {1, 0}},
  };
  const C z{0.45, -0.35};
  for (const auto& c : cases) {
    const int total = c.ord.p + c.ord.q;
    const double h = total >= 3 ? 5e-3 : 1e-4;
    const double tol = total >= 3 ? 1e-5 : 1e-7;
    const C closed = wirtinger(c.f, z, c.ord);
    const C fd = wirtinger_fd(c.f, z, c.ord, h);
    INFO("kind=", static_cast<int>(c.f.kind), " p=", c.ord.p, " q=", c.ord.q);
    CHECK(std::abs(fd - closed) <= tol * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("cylinder-wave ladder identities") {
  // d/dz J_k e^{ik phi} climbs down, d/dzbar climbs up:
  //   d/dz    = (lambda/2)  J_{k-1} e^{i(k-1)phi}
  //   d/dzbar = -(lambda/2) J_{k+1} e^{i(k+1)phi}
  const C lambda{3.0, 0.8};
  const C z{0.6, 0.3};
  for (int k : {-2, 0, 1, 3}) {
    const Field f = Field::cylinder_wave(lambda, 0, k);
    const C dz = wirtinger(f, z, {1, 0});
    const C dzb = wirtinger(f, z, {0, 1});
    const C down = 0.5 * lambda * eval(Field::cylinder_wave(lambda, 0, k - 1), z);
    const C up = -0.5 * lambda * eval(Field::cylinder_wave(lambda, 0, k + 1), z);
    CHECK(std::abs(dz - down) <= 1e-12 * std::max(1.0, std::abs(down)));
    CHECK(std::abs(dzb - up) <= 1e-12 * std::max(1.0, std::abs(up)));
  }
}

TEST_CASE("monomial derivatives are falling factorials, then vanish") {
  const C z{0.7, 0.2};
  // (d/dz)^2 (d/dzbar)^1 z^3 zbar^2 = 6 z * 2 zbar = 12 z zbar.
  const C got = wirtinger(Field::monomial(3, 2), z, {2, 1});
  const C want = 12.0 * z * std::conj(z);
  CHECK(std::abs(got - want) <= 1e-15 * std::abs(want));
  // Orders past the exponents annihilate exactly, no epsilon.
  CHECK(wirtinger(Field::monomial(3, 2), z, {4, 0}) == C{0.0, 0.0});
  CHECK(wirtinger(Field::monomial(3, 2), z, {0, 3}) == C{0.0, 0.0});
  CHECK(wirtinger(Field::monomial(2, 2), z, {3, 3}) == C{0.0, 0.0});
}

TEST_CASE("kernel monomials are annihilated exactly") {
  for (auto [m, s] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}}) {
    const EquationParams params{m, s, 1.0};
    for (int k = -5; k <= 5; ++k) {
      const auto fam = kernel_monomials(k, params);
      // Family sizes: s choices with p+k >= 0, plus m-s from the second family.
      int want_a = 0;
      for (int p = 0; p <= s - 1; ++p)
        if (p + k >= 0) ++want_a;
      CHECK(fam.size() == static_cast<size_t>(want_a + (m - s)));
      for (const auto& f : fam) {
        for (const C z : {C{0.4, 0.3}, C{-0.9, 0.1}}) {
          CHECK(wirtinger(f, z, {m - s, m}) == C{0.0, 0.0});
        }
      }
    }
  }
}

TEST_CASE("derivatives are linear over superpositions") {
  const Field f = Field::superposition(
      {C{2.0, 1.0}, C{0.0, -3.0}},
      {Field::plane_wave(C{1.5, 0.0}, 0.3), Field::monomial(2, 1)});
  const C z{0.25, 0.6};
  const DerivOrder ord{1, 1};
  const C got = wirtinger(f, z, ord);
  const C want = C{2.0, 1.0} * wirtinger(f.part[0], z, ord) +
                 C{0.0, -3.0} * wirtinger(f.part[1], z, ord);
  CHECK(std::abs(got - want) <= 1e-15 * std::max(1.0, std::abs(want)));
}

TEST_CASE("field validation") {
  CHECK_THROWS_AS(eval(Field::monomial(-1, 0), C{0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(Field::cylinder_wave(C{1.0, 0.0}, 9, 0), ValidationError);
  CHECK_THROWS_AS(Field::cylinder_wave(C{1.0, 0.0}, 0, 65), ValidationError);
  CHECK_THROWS_AS(Field::superposition({C{1.0, 0.0}}, {}), ValidationError);
  const Field f = Field::monomial(1, 1);
  CHECK_THROWS_AS(wirtinger(f, C{0.0, 0.0}, {-1, 0}), ValidationError);
  CHECK_THROWS_AS(wirtinger_fd(f, C{0.0, 0.0}, {1, 4}, 1e-4), ValidationError);
  CHECK_THROWS_AS(wirtinger_fd(f, C{0.0, 0.0}, {1, 0}, 1e-6), ValidationError);
  CHECK_THROWS_AS(wirtinger_fd(f, C{0.0, 0.0}, {1, 0}, 0.5), ValidationError);
}

TEST_CASE("default step scales with the point") {
  CHECK(default_fd_step(C{0.0, 0.0}) == 1e-4);
  CHECK(default_fd_step(C{30.0, 40.0}) == doctest::Approx(5e-3));
}
