#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "diskmean/fields.hpp"
#include "diskmean/meanvalue.hpp"
#include "diskmean/zeroscan.hpp"

namespace diskmean {

/// A simultaneous zero of g_{r1} and g_{r2}: lambda = w1/r1 = w2/r2 for
/// catalog zeros w1, w2 (up to the matching tolerance).
struct CommonZero {
  std::complex<double> lambda{0.0, 0.0};
  int idx1 = -1;             // catalog index of w1
  int idx2 = -1;             // catalog index of w2
  double ratio_defect = 0.0;  // | w2/w1 - r2/r1 |
  int multiplicity = 1;       // min of the two catalog multiplicities
};

/// All common zeros of g_{r1} and g_{r2} recoverable from one canonical
/// catalog, in the left half-plane convention (Re < 0, or Re == 0 and
/// Im < 0), sorted by (|lambda|, Im). The search is exhaustive only for
/// |lambda| <= catalog.lambda_max / max(r1, r2).
std::vector<CommonZero> common_zeros(const ZeroCatalog& catalog, double r1, double r2,
                                     double tol = 1e-9);

enum class TwoRadiiVerdict {
  CounterexampleConstructed,           // joint cylinder-wave mode exists at any R
  Injective,                           // no common zero found, R > r1 + r2
  NonconstructiveCounterexampleRegime, // no common zero found, R < r1 + r2
  Indeterminate,                       // no common zero found, R == r1 + r2 exactly
};

const char* to_string(TwoRadiiVerdict v);

struct TwoRadiiReport {
  int m = 1;
  int s = 0;
  double r1 = 1.0;
  double r2 = 1.0;
  double R = 0.0;
  double lambda_max = 0.0;  // |lambda| range the common-zero search certifies
  TwoRadiiVerdict verdict = TwoRadiiVerdict::Indeterminate;
  std::vector<CommonZero> common;
  bool has_counterexample = false;
  std::complex<double> counterexample_lambda{0.0, 0.0};  // smallest-|lambda| common zero
};

/// Classify the pair (r1, r2) on the disk of radius R (requires
/// max(r1, r2) < R). A nonempty common-zero set always yields
/// CounterexampleConstructed; an empty one is decided by R against r1 + r2.
TwoRadiiReport classify(const ZeroCatalog& catalog, double r1, double r2, double R,
                        double tol = 1e-9);

/// The joint mode itself: CylinderWave(counterexample_lambda, 0, 0).
Field counterexample_field(const TwoRadiiReport& rep);

struct CounterexampleCheck {
  bool pass = false;
  double max_abs_residual = 0.0;  // worst residual over both radii
  double tolerance = 0.0;         // max(1e-9, 3 * worst quadrature error)
  double pde_scale = 0.0;         // max |annihilator applied| over the samples
  double field_scale = 0.0;       // max |f| over the samples
};

/// Numerical sanity of the constructed counterexample: residual below
/// tolerance at seeded centres |z| < R - r_i for both radii, and the kernel
/// annihilator visibly nonzero (pde_scale >= 1e-3 * field_scale), so the
/// mode is not hiding in the trivial polynomial kernel.
CounterexampleCheck check_counterexample(const TwoRadiiReport& rep, std::uint64_t seed,
                                         const QuadratureRule& rule = {});

std::string tworadii_to_json(const TwoRadiiReport& rep);

}  // namespace diskmean
