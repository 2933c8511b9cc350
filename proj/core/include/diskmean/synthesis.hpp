#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "diskmean/fields.hpp"
#include "diskmean/meanvalue.hpp"

namespace diskmean {

/// Coefficient on the first kernel family, z^{p+k} conj(z)^p (0 <= p <= s-1).
struct SolutionTermA {
  int k = 0;
  int p = 0;
  std::complex<double> coeff{0.0, 0.0};
};

/// Coefficient on the second kernel family:
/// z^{p+s+k} conj(z)^{p+s} when k+s >= 0, else z^p conj(z)^{p-k}
/// (0 <= p <= m-s-1).
struct SolutionTermB {
  int k = 0;
  int p = 0;
  std::complex<double> coeff{0.0, 0.0};
};

/// One cylinder-wave mode. For the assembled field to solve the equation,
/// lambda must be a zero of g_r(lambda) = G(r lambda) and eta must stay below
/// its multiplicity; build_solution does not enforce that (verify_solution
/// checks it numerically, which is what the negative controls rely on).
struct SolutionTermC {
  std::complex<double> lambda{0.0, 0.0};
  int eta = 0;
  int k = 0;
  std::complex<double> coeff{0.0, 0.0};
};

struct SolutionSpec {
  int m = 1;
  int s = 0;
  double r = 1.0;
  int max_harmonic = 0;      // declared bound on |k| over all terms
  double alpha_decay = 0.0;  // declared decay exponent for the c coefficients
  double c_bound = 1.0;      // declared decay constant
  std::vector<SolutionTermA> a;
  std::vector<SolutionTermB> b;
  std::vector<SolutionTermC> c;
};

void validate(const SolutionSpec& spec);

/// Assemble the flattened superposition described by spec.
Field build_solution(const SolutionSpec& spec);

/// Decay certificate: |c_j| <= c_bound * |lambda_j|^{-alpha_decay} for all j.
struct DecayReport {
  bool ok = true;
  double max_ratio = 0.0;  // max_j |c_j| |lambda_j|^alpha / c_bound
  int worst_index = -1;    // index into spec.c, -1 when there are no c terms
};

DecayReport check_decay(const SolutionSpec& spec);

/// The operator (d/dz)^p (d/dzbar)^q that annihilates the polynomial kernel;
/// kernel_operator gives p = m-s, q = m.
struct PdeOperator {
  int p = 1;
  int q = 1;
};

PdeOperator kernel_operator(const EquationParams& params);

std::complex<double> apply_pde(const Field& f, std::complex<double> z, const PdeOperator& op,
                               const Envelope& env = {});

struct VerifySample {
  std::complex<double> z{0.0, 0.0};
  std::complex<double> residual{0.0, 0.0};
  double quad_error = 0.0;
  int n_rho = 0;
  int n_theta = 0;
};

/// Sample-based verification report. The samples certify the tested centres
/// only, so completeness_certified is false by construction; it is part of
/// the report so downstream consumers see the limitation explicitly.
struct VerifyReport {
  double max_abs_residual = 0.0;
  double max_quad_error = 0.0;
  double tolerance = 0.0;  // max(1e-9, 3 * max_quad_error)
  bool pass = false;
  bool completeness_certified = false;
  std::vector<VerifySample> samples;
};

/// Evaluate the residual of an arbitrary field at low-discrepancy centres
/// covering |z| <= 0.93 (R - r) (golden-spiral layout, seeded rotation),
/// plus the origin and eight points at 0.95 (R - r). Requires R > params.r.
VerifyReport verify_field(const Field& f, const EquationParams& params, double R,
                          int n_samples, std::uint64_t seed, const QuadratureRule& rule = {},
                          const Envelope& env = {});

/// verify_field on build_solution(spec), with the envelope widened to admit
/// the spec's cylinder-wave modes on |z| < R.
VerifyReport verify_solution(const SolutionSpec& spec, double R, int n_samples,
                             std::uint64_t seed, const QuadratureRule& rule = {});

/// JSON persistence (schema 1); round-trips exactly.
std::string solution_to_json(const SolutionSpec& spec);
SolutionSpec solution_from_json(const std::string& text);

}  // namespace diskmean
