#include "diskmean/fields.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "diskmean/errors.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;

constexpr int kMaxMonomialExp = 64;

C ipow(C z, int n) {
  C acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) acc *= z;
  return acc;
}

double binom(int n, int j) {
  double acc = 1.0;
  for (int i = 1; i <= j; ++i) acc = acc * (n - j + i) / i;
  return acc;
}

// Falling factorial a (a-1) ... (a-p+1); exactly 0 once p > a.
double falling(int a, int p) {
  double acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= (a - i);
  return acc;
}

void validate_field(const Field& f) {
  switch (f.kind) {
    case FieldKind::PlaneWave:
      return;
    case FieldKind::CylinderWave:
      if (f.eta < 0 || f.eta > 8) {
        throw ValidationError("Field: cylinder wave eta outside [0, 8]");
      }
      if (std::abs(f.k) > 64) throw ValidationError("Field: cylinder wave |k| > 64");
      return;
    case FieldKind::Monomial:
      if (f.a < 0 || f.b < 0 || f.a > kMaxMonomialExp || f.b > kMaxMonomialExp) {
        throw ValidationError("Field: monomial exponents outside [0, 64]");
      }
      return;
    case FieldKind::Superposition:
      if (f.coeff.size() != f.part.size()) {
        throw ValidationError("Field: superposition coefficient/part size mismatch");
      }
      return;
  }
  throw ValidationError("Field: unknown kind");
}

}  // namespace

Field Field::plane_wave(C lambda, double alpha) {
  Field f;
  f.kind = FieldKind::PlaneWave;
  f.lambda = lambda;
  f.alpha = alpha;
  return f;
}

Field Field::cylinder_wave(C lambda, int eta, int k) {
  Field f;
  f.kind = FieldKind::CylinderWave;
  f.lambda = lambda;
  f.eta = eta;
  f.k = k;
  validate_field(f);
  return f;
}

Field Field::monomial(int a, int b) {
  Field f;
  f.kind = FieldKind::Monomial;
  f.a = a;
  f.b = b;
  validate_field(f);
  return f;
}

Field Field::superposition(std::vector<C> coeff, std::vector<Field> part) {
  if (coeff.size() != part.size()) {
    throw ValidationError("Field: superposition coefficient/part size mismatch");
  }
  Field f;
  f.kind = FieldKind::Superposition;
  // Flatten nested superpositions so the stored tree has depth <= 2.
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part[i].kind == FieldKind::Superposition) {
      for (std::size_t j = 0; j < part[i].part.size(); ++j) {
        f.coeff.push_back(coeff[i] * part[i].coeff[j]);
        f.part.push_back(part[i].part[j]);
      }
    } else {
      validate_field(part[i]);
      f.coeff.push_back(coeff[i]);
      f.part.push_back(std::move(part[i]));
    }
  }
  return f;
}

C eval(const Field& f, C z, const Envelope& env) {
  switch (f.kind) {
    case FieldKind::PlaneWave: {
      const C ex = C(0, 1) * f.lambda *
                   (z.real() * std::cos(f.alpha) + z.imag() * std::sin(f.alpha));
      return std::exp(ex);
    }
    case FieldKind::CylinderWave: {
      const double rho = std::abs(z);
      const double ph = std::arg(z);  // arg(0) = 0; the radial factor vanishes there
      return phi(f.lambda, f.eta, f.k, rho, env) * std::exp(C(0, f.k * ph));
    }
    case FieldKind::Monomial:
      return ipow(z, f.a) * ipow(std::conj(z), f.b);
    case FieldKind::Superposition: {
      C acc(0.0, 0.0);
      for (std::size_t i = 0; i < f.part.size(); ++i) acc += f.coeff[i] * eval(f.part[i], z, env);
      return acc;
    }
  }
  throw ValidationError("eval: unknown field kind");
}

C wirtinger(const Field& f, C z, DerivOrder ord, const Envelope& env) {
  const int p = ord.p, q = ord.q;
  if (p < 0 || q < 0) throw ValidationError("wirtinger: negative order");
  if (p == 0 && q == 0) return eval(f, z, env);

  switch (f.kind) {
    case FieldKind::PlaneWave: {
      // Each d/dz brings down (i lambda / 2) e^{-i alpha}, each d/dzbar
      // (i lambda / 2) e^{+i alpha}.
      const C base = C(0, 0.5) * f.lambda;
      return ipow(base, p + q) * std::exp(C(0, f.alpha * (q - p))) * eval(f, z, env);
    }
    case FieldKind::CylinderWave: {
      // Derived from d/dz = e^{-i phi}/2 (d/drho - (i/rho) d/dphi) and the
      // ladder identities J' -+ (k/t) J = -+ J_{k+-1}; the eta > 0 case is the
      // lambda-derivative of the eta = 0 case (Leibniz in lambda).
      const int kp = f.k + q - p;
      const double rho = std::abs(z);
      const double ph = std::arg(z);
      const int n = p + q;
      C radial(0.0, 0.0);
      const int jmax = std::min(f.eta, n);
      for (int j = 0; j <= jmax; ++j) {
        const double c = binom(f.eta, j) * falling(n, j);
        radial += c * ipow(f.lambda, n - j) * phi(f.lambda, f.eta - j, kp, rho, env);
      }
      const double sgn = (q % 2 == 0) ? 1.0 : -1.0;
      return sgn * std::ldexp(1.0, -n) * radial * std::exp(C(0, kp * ph));
    }
    case FieldKind::Monomial: {
      if (p > f.a || q > f.b) return C(0.0, 0.0);
      const double c = falling(f.a, p) * falling(f.b, q);
      return c * ipow(z, f.a - p) * ipow(std::conj(z), f.b - q);
    }
    case FieldKind::Superposition: {
      C acc(0.0, 0.0);
      for (std::size_t i = 0; i < f.part.size(); ++i) {
        acc += f.coeff[i] * wirtinger(f.part[i], z, ord, env);
      }
      return acc;
    }
  }
  throw ValidationError("wirtinger: unknown field kind");
}

namespace {

// 4th-order central first-derivative stencil along direction dir.
template <typename F>
C stencil(const F& g, C z, C dir, double h) {
  return (-g(z + 2.0 * h * dir) + 8.0 * g(z + h * dir) - 8.0 * g(z - h * dir) +
          g(z - 2.0 * h * dir)) /
         (12.0 * h);
}

C wirtinger_fd_rec(const Field& f, C z, int p, int q, double h, const Envelope& env) {
  if (p == 0 && q == 0) return eval(f, z, env);
  const int np = (p > 0) ? p - 1 : p;
  const int nq = (p > 0) ? q : q - 1;
  auto g = [&](C zz) { return wirtinger_fd_rec(f, zz, np, nq, h, env); };
  const C dx = stencil(g, z, C(1.0, 0.0), h);
  const C dy = stencil(g, z, C(0.0, 1.0), h);
  return (p > 0) ? 0.5 * (dx - C(0, 1) * dy) : 0.5 * (dx + C(0, 1) * dy);
}

}  // namespace

C wirtinger_fd(const Field& f, C z, DerivOrder ord, double h, const Envelope& env) {
  if (ord.p < 0 || ord.q < 0) throw ValidationError("wirtinger_fd: negative order");
  if (ord.p + ord.q > 4) {
    throw ValidationError("wirtinger_fd: order p+q = " + std::to_string(ord.p + ord.q) +
                          " exceeds 4");
  }
  if (!(h >= 1e-5 && h <= 1e-2)) {
    throw ValidationError("wirtinger_fd: step h outside [1e-5, 1e-2]");
  }
  return wirtinger_fd_rec(f, z, ord.p, ord.q, h, env);
}

double default_fd_step(C z) { return 1e-4 * std::max(1.0, std::abs(z)); }

std::vector<Field> kernel_monomials(int k, const EquationParams& params) {
  validate(params);
  const int m = params.m, s = params.s;
  std::vector<Field> out;
  for (int p = 0; p < s; ++p) {
    if (p + k >= 0) out.push_back(Field::monomial(p + k, p));
  }
  for (int p = 0; p < m - s; ++p) {
    if (k + s >= 0) {
      out.push_back(Field::monomial(p + s + k, p + s));
    } else {
      out.push_back(Field::monomial(p, p - k));
    }
  }
  return out;
}

}  // namespace diskmean
