#include "diskmean/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "diskmean/errors.hpp"
#include "diskmean/rng.hpp"
#include "diskmean/version.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenAngle = 2.39996322972865332;  // 2 pi (1 - 1/phi)

}  // namespace

void validate(const SolutionSpec& spec) {
  validate(EquationParams{spec.m, spec.s, spec.r});
  if (spec.max_harmonic < 0 || spec.max_harmonic > 64) {
    throw ValidationError("SolutionSpec: max_harmonic outside [0, 64]");
  }
  if (!(spec.alpha_decay >= 0.0) || !std::isfinite(spec.alpha_decay)) {
    throw ValidationError("SolutionSpec: alpha_decay must be finite and >= 0");
  }
  if (!(spec.c_bound > 0.0) || !std::isfinite(spec.c_bound)) {
    throw ValidationError("SolutionSpec: c_bound must be finite and positive");
  }
  for (const SolutionTermA& t : spec.a) {
    if (t.p < 0 || t.p > spec.s - 1) {
      throw ValidationError("SolutionSpec: a-term p outside [0, s-1]");
    }
    if (t.p + t.k < 0) throw ValidationError("SolutionSpec: a-term needs p + k >= 0");
    if (std::abs(t.k) > spec.max_harmonic) {
      throw ValidationError("SolutionSpec: a-term |k| exceeds max_harmonic");
    }
  }
  for (const SolutionTermB& t : spec.b) {
    if (t.p < 0 || t.p > spec.m - spec.s - 1) {
      throw ValidationError("SolutionSpec: b-term p outside [0, m-s-1]");
    }
    if (std::abs(t.k) > spec.max_harmonic) {
      throw ValidationError("SolutionSpec: b-term |k| exceeds max_harmonic");
    }
  }
  for (const SolutionTermC& t : spec.c) {
    if (!(std::abs(t.lambda) >= 1e-6) || !std::isfinite(std::abs(t.lambda))) {
      throw ValidationError("SolutionSpec: c-term lambda must be finite with |lambda| >= 1e-6");
    }
    if (t.eta < 0 || t.eta > 8) throw ValidationError("SolutionSpec: c-term eta outside [0, 8]");
    if (std::abs(t.k) > spec.max_harmonic) {
      throw ValidationError("SolutionSpec: c-term |k| exceeds max_harmonic");
    }
  }
}

Field build_solution(const SolutionSpec& spec) {
  validate(spec);
  std::vector<C> coeff;
  std::vector<Field> part;
  for (const SolutionTermA& t : spec.a) {
    coeff.push_back(t.coeff);
    part.push_back(Field::monomial(t.p + t.k, t.p));
  }
  for (const SolutionTermB& t : spec.b) {
    coeff.push_back(t.coeff);
    if (t.k + spec.s >= 0) {
      part.push_back(Field::monomial(t.p + spec.s + t.k, t.p + spec.s));
    } else {
      part.push_back(Field::monomial(t.p, t.p - t.k));
    }
  }
  for (const SolutionTermC& t : spec.c) {
    coeff.push_back(t.coeff);
    part.push_back(Field::cylinder_wave(t.lambda, t.eta, t.k));
  }
  return Field::superposition(std::move(coeff), std::move(part));
}

DecayReport check_decay(const SolutionSpec& spec) {
  validate(spec);
  DecayReport rep;
  for (std::size_t j = 0; j < spec.c.size(); ++j) {
    const SolutionTermC& t = spec.c[j];
    const double ratio =
        std::abs(t.coeff) * std::pow(std::abs(t.lambda), spec.alpha_decay) / spec.c_bound;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.worst_index = static_cast<int>(j);
    }
  }
  rep.ok = rep.max_ratio <= 1.0;
  return rep;
}

PdeOperator kernel_operator(const EquationParams& params) {
  validate(params);
  return PdeOperator{params.m - params.s, params.m};
}

C apply_pde(const Field& f, C z, const PdeOperator& op, const Envelope& env) {
  if (op.p < 1 || op.q < 1) {
    throw ValidationError("apply_pde: operator orders must be >= 1");
  }
  return wirtinger(f, z, DerivOrder{op.p, op.q}, env);
}

VerifyReport verify_field(const Field& f, const EquationParams& params, double R,
                          int n_samples, std::uint64_t seed, const QuadratureRule& rule,
                          const Envelope& env) {
  validate(params);
  validate(rule);
  if (!(R > params.r) || !std::isfinite(R)) {
    throw ValidationError("verify_field: R must be finite and exceed params.r");
  }
  if (n_samples < 1 || n_samples > 100000) {
    throw ValidationError("verify_field: n_samples outside [1, 100000]");
  }

  std::vector<C> centres;
  centres.emplace_back(0.0, 0.0);
  Rng rng(seed);
  const double rot = rng.uniform(-kPi, kPi);
  const double span = R - params.r;
  for (int j = 0; j < n_samples; ++j) {
    const double rad = 0.93 * span * std::sqrt((j + 0.5) / n_samples);
    const double ang = rot + kGoldenAngle * j;
    centres.emplace_back(rad * std::cos(ang), rad * std::sin(ang));
  }
  const double rot2 = rng.uniform(-kPi, kPi);
  for (int j = 0; j < 8; ++j) {
    const double ang = rot2 + 2.0 * kPi * j / 8.0;
    centres.emplace_back(0.95 * span * std::cos(ang), 0.95 * span * std::sin(ang));
  }

  VerifyReport rep;
  for (const C& z : centres) {
    const ResidualReport rr = residual(f, z, params, rule, env);
    VerifySample row;
    row.z = z;
    row.residual = rr.residual;
    row.quad_error = rr.quad_error;
    row.n_rho = rr.n_rho;
    row.n_theta = rr.n_theta;
    rep.samples.push_back(row);
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(row.residual));
    rep.max_quad_error = std::max(rep.max_quad_error, row.quad_error);
  }
  rep.tolerance = std::max(1e-9, 3.0 * rep.max_quad_error);
  rep.pass = rep.max_abs_residual <= rep.tolerance;
  return rep;
}

VerifyReport verify_solution(const SolutionSpec& spec, double R, int n_samples,
                             std::uint64_t seed, const QuadratureRule& rule) {
  validate(spec);
  const Field field = build_solution(spec);

  // Cylinder waves get evaluated on |zeta| < R; widen the envelope so large
  // catalog zeros stay admissible.
  Envelope env;
  for (const SolutionTermC& t : spec.c) {
    env.max_abs = std::max(env.max_abs, 1.05 * std::abs(t.lambda) * R + 2.0);
    env.max_imag = std::max(env.max_imag, 1.05 * std::abs(t.lambda.imag()) * R + 2.0);
  }
  return verify_field(field, EquationParams{spec.m, spec.s, spec.r}, R, n_samples, seed, rule,
                      env);
}

std::string solution_to_json(const SolutionSpec& spec) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["m"] = spec.m;
  j["s"] = spec.s;
  j["r"] = spec.r;
  j["K"] = spec.max_harmonic;
  j["alpha"] = spec.alpha_decay;
  j["C"] = spec.c_bound;
  j["a"] = nlohmann::json::array();
  for (const SolutionTermA& t : spec.a) {
    j["a"].push_back(
        {{"k", t.k}, {"p", t.p}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  j["b"] = nlohmann::json::array();
  for (const SolutionTermB& t : spec.b) {
    j["b"].push_back(
        {{"k", t.k}, {"p", t.p}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  j["c"] = nlohmann::json::array();
  for (const SolutionTermC& t : spec.c) {
    j["c"].push_back({{"lambda_re", t.lambda.real()},
                      {"lambda_im", t.lambda.imag()},
                      {"eta", t.eta},
                      {"k", t.k},
                      {"re", t.coeff.real()},
                      {"im", t.coeff.imag()}});
  }
  return j.dump(2);
}

SolutionSpec solution_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("schema") || j["schema"].get<int>() != kSchemaVersion) {
    throw ValidationError("solution_from_json: unsupported schema");
  }
  SolutionSpec spec;
  spec.m = j.at("m").get<int>();
  spec.s = j.at("s").get<int>();
  spec.r = j.at("r").get<double>();
  spec.max_harmonic = j.at("K").get<int>();
  spec.alpha_decay = j.at("alpha").get<double>();
  spec.c_bound = j.at("C").get<double>();
  for (const auto& e : j.at("a")) {
    SolutionTermA t;
    t.k = e.at("k").get<int>();
    t.p = e.at("p").get<int>();
    t.coeff = C(e.at("re").get<double>(), e.at("im").get<double>());
    spec.a.push_back(t);
  }
  for (const auto& e : j.at("b")) {
    SolutionTermB t;
    t.k = e.at("k").get<int>();
    t.p = e.at("p").get<int>();
    t.coeff = C(e.at("re").get<double>(), e.at("im").get<double>());
    spec.b.push_back(t);
  }
  for (const auto& e : j.at("c")) {
    SolutionTermC t;
    t.lambda = C(e.at("lambda_re").get<double>(), e.at("lambda_im").get<double>());
    t.eta = e.at("eta").get<int>();
    t.k = e.at("k").get<int>();
    t.coeff = C(e.at("re").get<double>(), e.at("im").get<double>());
    spec.c.push_back(t);
  }
  validate(spec);
  return spec;
}

}  // namespace diskmean
