#include "diskmean/tworadii.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "diskmean/errors.hpp"
#include "diskmean/rng.hpp"
#include "diskmean/synthesis.hpp"
#include "diskmean/version.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;

void orbit_of(C w, C out[4], int& n) {
  const C cand[4] = {w, -w, std::conj(w), -std::conj(w)};
  n = 0;
  for (int i = 0; i < 4; ++i) {
    bool dup = false;
    for (int j = 0; j < n; ++j) {
      if (out[j] == cand[i]) {
        dup = true;
        break;
      }
    }
    if (!dup) out[n++] = cand[i];
  }
}

bool left_half_selected(C lambda) {
  return lambda.real() < 0.0 || (lambda.real() == 0.0 && lambda.imag() < 0.0);
}

void sort_common(std::vector<CommonZero>& v) {
  std::sort(v.begin(), v.end(), [](const CommonZero& a, const CommonZero& b) {
    const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
    if (ma != mb) return ma < mb;
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });
}

}  // namespace

std::vector<CommonZero> common_zeros(const ZeroCatalog& catalog, double r1, double r2,
                                     double tol) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2)) {
    throw ValidationError("common_zeros: radii must be positive and finite");
  }
  if (!(tol > 0.0)) throw ValidationError("common_zeros: tol must be positive");

  std::vector<CommonZero> out;
  if (r1 == r2) {
    // Identical radii share every zero exactly.
    for (std::size_t i = 0; i < catalog.zeros.size(); ++i) {
      const Zero& z = catalog.zeros[i];
      C orbit[4];
      int n = 0;
      orbit_of(z.lambda, orbit, n);
      for (int t = 0; t < n; ++t) {
        const C lambda = orbit[t] / r1;
        if (!left_half_selected(lambda)) continue;
        CommonZero cz;
        cz.lambda = lambda;
        cz.idx1 = cz.idx2 = static_cast<int>(i);
        cz.ratio_defect = 0.0;
        cz.multiplicity = z.multiplicity;
        out.push_back(cz);
      }
    }
    sort_common(out);
    return out;
  }

  const double ratio = r2 / r1;
  for (std::size_t i = 0; i < catalog.zeros.size(); ++i) {
    C orbit1[4];
    int n1 = 0;
    orbit_of(catalog.zeros[i].lambda, orbit1, n1);
    for (int t1 = 0; t1 < n1; ++t1) {
      const C w1 = orbit1[t1];
      const C lambda = w1 / r1;
      if (!left_half_selected(lambda)) continue;
      for (std::size_t j = 0; j < catalog.zeros.size(); ++j) {
        C orbit2[4];
        int n2 = 0;
        orbit_of(catalog.zeros[j].lambda, orbit2, n2);
        for (int t2 = 0; t2 < n2; ++t2) {
          const C w2 = orbit2[t2];
          if (std::abs(w2 - w1 * ratio) > tol * (1.0 + std::abs(w1))) continue;
          CommonZero cz;
          cz.lambda = lambda;
          cz.idx1 = static_cast<int>(i);
          cz.idx2 = static_cast<int>(j);
          cz.ratio_defect = std::abs(w2 / w1 - ratio);
          cz.multiplicity = std::min(catalog.zeros[i].multiplicity, catalog.zeros[j].multiplicity);
          bool merged = false;
          for (CommonZero& prev : out) {
            if (std::abs(prev.lambda - cz.lambda) <= tol * (1.0 + std::abs(cz.lambda))) {
              if (cz.ratio_defect < prev.ratio_defect) prev = cz;
              merged = true;
              break;
            }
          }
          if (!merged) out.push_back(cz);
        }
      }
    }
  }
  sort_common(out);
  return out;
}

const char* to_string(TwoRadiiVerdict v) {
  switch (v) {
    case TwoRadiiVerdict::CounterexampleConstructed:
      return "counterexample_constructed";
    case TwoRadiiVerdict::Injective:
      return "injective";
    case TwoRadiiVerdict::NonconstructiveCounterexampleRegime:
      return "nonconstructive_counterexample_regime";
    case TwoRadiiVerdict::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

TwoRadiiReport classify(const ZeroCatalog& catalog, double r1, double r2, double R,
                        double tol) {
  if (!(std::max(r1, r2) < R) || !std::isfinite(R)) {
    throw ValidationError("classify: R must be finite and exceed both radii");
  }
  TwoRadiiReport rep;
  rep.m = catalog.m;
  rep.s = catalog.s;
  rep.r1 = r1;
  rep.r2 = r2;
  rep.R = R;
  rep.lambda_max = catalog.lambda_max / std::max(r1, r2);
  rep.common = common_zeros(catalog, r1, r2, tol);
  if (!rep.common.empty()) {
    rep.verdict = TwoRadiiVerdict::CounterexampleConstructed;
    rep.has_counterexample = true;
    rep.counterexample_lambda = rep.common.front().lambda;
  } else if (R > r1 + r2) {
    rep.verdict = TwoRadiiVerdict::Injective;
  } else if (R < r1 + r2) {
    rep.verdict = TwoRadiiVerdict::NonconstructiveCounterexampleRegime;
  } else {
    rep.verdict = TwoRadiiVerdict::Indeterminate;
  }
  return rep;
}

Field counterexample_field(const TwoRadiiReport& rep) {
  if (!rep.has_counterexample) {
    throw ValidationError("counterexample_field: report carries no counterexample");
  }
  return Field::cylinder_wave(rep.counterexample_lambda, 0, 0);
}

CounterexampleCheck check_counterexample(const TwoRadiiReport& rep, std::uint64_t seed,
                                         const QuadratureRule& rule) {
  const Field f = counterexample_field(rep);
  validate(rule);

  Envelope env;
  const double al = std::abs(rep.counterexample_lambda);
  env.max_abs = std::max(env.max_abs, 1.05 * al * rep.R + 2.0);
  env.max_imag =
      std::max(env.max_imag, 1.05 * std::abs(rep.counterexample_lambda.imag()) * rep.R + 2.0);

  CounterexampleCheck chk;
  double max_quad_error = 0.0;
  Rng rng(seed);
  const PdeOperator op = kernel_operator(EquationParams{rep.m, rep.s, rep.r1});
  const double radii[2] = {rep.r1, rep.r2};
  for (double r : radii) {
    const EquationParams params{rep.m, rep.s, r};
    for (int i = 0; i < 20; ++i) {
      const C z = rng.in_disk(0.92 * (rep.R - r));
      const ResidualReport rr = residual(f, z, params, rule, env);
      chk.max_abs_residual = std::max(chk.max_abs_residual, std::abs(rr.residual));
      max_quad_error = std::max(max_quad_error, rr.quad_error);
      chk.field_scale = std::max(chk.field_scale, std::abs(eval(f, z, env)));
      chk.pde_scale = std::max(chk.pde_scale, std::abs(apply_pde(f, z, op, env)));
    }
  }
  chk.tolerance = std::max(1e-9, 3.0 * max_quad_error);
  chk.pass = chk.max_abs_residual <= chk.tolerance &&
             chk.pde_scale >= 1e-3 * chk.field_scale && chk.field_scale > 0.0;
  return chk;
}

std::string tworadii_to_json(const TwoRadiiReport& rep) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["m"] = rep.m;
  j["s"] = rep.s;
  j["r1"] = rep.r1;
  j["r2"] = rep.r2;
  j["R"] = rep.R;
  j["lambda_max"] = rep.lambda_max;
  j["verdict"] = to_string(rep.verdict);
  j["common"] = nlohmann::json::array();
  for (const CommonZero& cz : rep.common) {
    j["common"].push_back({{"re", cz.lambda.real()},
                           {"im", cz.lambda.imag()},
                           {"idx1", cz.idx1},
                           {"idx2", cz.idx2},
                           {"ratio_defect", cz.ratio_defect},
                           {"mult", cz.multiplicity}});
  }
  j["has_counterexample"] = rep.has_counterexample;
  if (rep.has_counterexample) {
    j["counterexample"] = {{"lambda_re", rep.counterexample_lambda.real()},
                           {"lambda_im", rep.counterexample_lambda.imag()},
                           {"eta", 0},
                           {"k", 0}};
  }
  return j.dump(2);
}

}  // namespace diskmean
