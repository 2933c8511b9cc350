#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <complex>

#include "diskmean/errors.hpp"
#include "diskmean/tworadii.hpp"
#include "diskmean/zeroscan.hpp"

using namespace diskmean;
using C = std::complex<double>;

namespace {

const ZeroCatalog& catalog10() {
  static const ZeroCatalog cat = [] {
    ScanOptions opts;
    opts.lambda_max = 16.0;
    return find_zeros(1, 0, opts);
  }();
  return cat;
}

ZeroCatalog synthetic_pair(C w1, C w2) {
  ZeroCatalog cat;
  cat.m = 1;
  cat.s = 0;
  cat.lambda_max = 20.0;
  cat.origin_multiplicity = 2;
  Zero a;
  a.lambda = w1;
  Zero b;
  b.lambda = w2;
  cat.zeros = {a, b};
  return cat;
}

}  // namespace

TEST_CASE("equal radii share every zero") {
  const auto common = common_zeros(catalog10(), 1.0, 1.0);
  // Two representatives, two selected orbit members each.
  REQUIRE(common.size() == 4);
  for (const auto& cz : common) {
    CHECK(cz.ratio_defect == 0.0);
    CHECK(cz.idx1 == cz.idx2);
    CHECK(cz.lambda.real() < 0.0);
    CHECK(cz.multiplicity == 1);
  }
}

TEST_CASE("incommensurable radii share nothing") {
  const auto common = common_zeros(catalog10(), 1.0, std::sqrt(2.0));
  CHECK(common.empty());
}

TEST_CASE("matched ratios are detected across the catalog") {
  // Second zero exactly twice the first: radii (1, 2) share lambda = w1.
  const auto cat = synthetic_pair(C{-6.0, 2.0}, C{-12.0, 4.0});
  const auto common = common_zeros(cat, 1.0, 2.0);
  REQUIRE(common.size() == 2);  // the zero and its mirror
  for (const auto& cz : common) {
    CHECK(std::abs(cz.lambda.real() + 6.0) <= 1e-12);
    CHECK(std::abs(std::abs(cz.lambda.imag()) - 2.0) <= 1e-12);
    CHECK(cz.ratio_defect <= 1e-12);
  }

  // A 1e-6 offset is rejected at the default tolerance, matched at 1e-4.
  const auto off = synthetic_pair(C{-6.0, 2.0}, C{-12.0, 2.0 * 2.0 + 1e-6});
  CHECK(common_zeros(off, 1.0, 2.0).empty());
  CHECK(common_zeros(off, 1.0, 2.0, 1e-4).size() == 2);
}

TEST_CASE("classification covers all four verdicts") {
  const auto& cat = catalog10();

  const auto constructed = classify(cat, 1.0, 1.0, 3.0);
  CHECK(constructed.verdict == TwoRadiiVerdict::CounterexampleConstructed);
  CHECK(constructed.has_counterexample);
  CHECK(std::abs(std::abs(constructed.counterexample_lambda) -
                 std::abs(cat.zeros[0].lambda)) <= 1e-12);

  const double r2 = std::sqrt(2.0);
  const auto injective = classify(cat, 1.0, r2, 3.0);
  CHECK(injective.verdict == TwoRadiiVerdict::Injective);
  CHECK_FALSE(injective.has_counterexample);

  const auto regime = classify(cat, 1.0, r2, 2.3);
  CHECK(regime.verdict == TwoRadiiVerdict::NonconstructiveCounterexampleRegime);

  // R = r1 + r2 exactly: the decision threshold itself.
  const auto edge = classify(cat, 1.0, 1.25, 2.25);
  CHECK(edge.verdict == TwoRadiiVerdict::Indeterminate);

  CHECK_THROWS_AS(classify(cat, 1.0, 3.0, 2.0), ValidationError);
}

TEST_CASE("verdicts have stable names") {
  CHECK(std::string(to_string(TwoRadiiVerdict::CounterexampleConstructed)) ==
        "counterexample_constructed");
  CHECK(std::string(to_string(TwoRadiiVerdict::Injective)) == "injective");
  CHECK(std::string(to_string(TwoRadiiVerdict::NonconstructiveCounterexampleRegime)) ==
        "nonconstructive_counterexample_regime");
  CHECK(std::string(to_string(TwoRadiiVerdict::Indeterminate)) == "indeterminate");
}

TEST_CASE("constructed counterexample is a nontrivial joint mode") {
  const auto rep = classify(catalog10(), 1.0, 1.0, 3.0);
  const Field f = counterexample_field(rep);
  CHECK(f.kind == FieldKind::CylinderWave);
  CHECK(f.eta == 0);
  CHECK(f.k == 0);
  CHECK(f.lambda == rep.counterexample_lambda);

  const auto check = check_counterexample(rep, 0x5EED);
  CHECK(check.pass);
  CHECK(check.max_abs_residual <= check.tolerance);
  CHECK(check.field_scale > 0.0);
  CHECK(check.pde_scale >= 1e-3 * check.field_scale);

  const auto none = classify(catalog10(), 1.0, std::sqrt(2.0), 3.0);
  CHECK_THROWS_AS(counterexample_field(none), ValidationError);
}

TEST_CASE("report serialises with the verdict spelled out") {
  const auto rep = classify(catalog10(), 1.0, 1.0, 3.0);
  const auto j = nlohmann::json::parse(tworadii_to_json(rep));
  CHECK(j["schema"].get<int>() == 1);
  CHECK(j["verdict"].get<std::string>() == "counterexample_constructed");
  CHECK(j["m"].get<int>() == 1);
  CHECK(j["r1"].get<double>() == 1.0);
  CHECK(j["R"].get<double>() == 3.0);
  CHECK(j["common"].is_array());
  CHECK(j["common"].size() == 4);
  CHECK(j["has_counterexample"].get<bool>());
}
