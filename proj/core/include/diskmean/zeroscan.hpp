#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "diskmean/characteristic.hpp"

namespace diskmean {

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diam() const;
  std::complex<double> center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(std::complex<double> w, double slack = 0.0) const {
    return w.real() >= x0 - slack && w.real() <= x1 + slack && w.imag() >= y0 - slack &&
           w.imag() <= y1 + slack;
  }
};

struct WindingOptions {
  double panels_per_unit = 4.0;  // starting boundary density
  double stability_tol = 0.02;   // successive-estimate agreement
  double integer_gap = 0.1;      // max distance to the nearest integer
  double clearance = 1e-8;       // min |f| allowed on sampled boundary nodes
  long max_total_points = 1 << 17;
};

/// Winding number of f around the rectangle boundary: adaptive trapezoid
/// refinement of the log-derivative integral, doubling the density until two
/// successive estimates agree within stability_tol. Throws
/// BoundaryTooCloseError when a boundary sample has |f| < clearance and
/// WindingUnstableError when the estimate fails to settle within integer_gap
/// of an integer inside the point budget.
int winding_number(const std::function<std::complex<double>(std::complex<double>)>& f,
                   const std::function<std::complex<double>(std::complex<double>)>& f_deriv,
                   const Rect& rect, const WindingOptions& opts = {});

/// One zero of the canonical characteristic function, stored as the orbit
/// representative with Re <= 0, Im >= 0 (zeros come in quadruples
/// {w, -w, conj w, -conj w}; purely real pairs store as -|w|).
struct Zero {
  std::complex<double> lambda{0.0, 0.0};
  int multiplicity = 1;
  double abs_g = 0.0;             // |G| at the refined zero
  double abs_gprime = 0.0;        // |G'| at the refined zero
  double isolation_radius = 0.0;  // half-side of the certifying square
};

struct ZeroCatalog {
  int m = 1;
  int s = 0;
  double lambda_max = 0.0;
  int origin_multiplicity = 0;
  std::vector<Zero> zeros;  // representatives, sorted by (|lambda|, Im)
};

struct ScanOptions {
  double lambda_max = 40.0;
  std::uint64_t seed = 0x5EEDULL;
  double cell_min_diam = 0.05;
  double newton_tol = 1e-14;
  int newton_max_iter = 50;
  double dedup_tol = 1e-8;
  int max_split_attempts = 5;
  WindingOptions winding;
};

/// Scan height: zeros of the canonical function lie below this for the
/// catalogued range (logarithmic strip with a fitted constant < 3).
double strip_height(double lambda_max);

/// Catalog every zero with |w| <= lambda_max (plus strays captured by the
/// rectangular scan corners) of the canonical characteristic function for
/// (m, s). Each zero is Newton-refined and certified by a winding integral
/// around its isolating square; the total count is reconciled against one
/// winding integral over the full scan rectangle (origin + 4x quadrant
/// orbits + 2x real-axis pairs). Failures throw CertificationError.
ZeroCatalog find_zeros(int m, int s, const ScanOptions& opts = {});

/// Zeros of g_r(z) = G(r z) selected in the closed left half-plane
/// convention: Re < 0, or Re == 0 and Im < 0. Expands each catalog
/// representative to its orbit, filters, scales by 1/r; abs_gprime and
/// isolation_radius are rescaled to the lambda variable.
std::vector<Zero> select_scaled_zeros(const ZeroCatalog& catalog, double r);

/// Asymptotic shape of the catalogued zero set for radius r:
/// strip constant, derivative floor, simplicity of large zeros.
struct AsymptoticsReport {
  double fitted_c1 = 0.0;          // max |Im lambda| / log(1 + |lambda|) over |lambda| > 4/r
  double min_abs_lambda_gprime = 0.0;  // min |lambda| * |g_r'(lambda)| over those zeros
  bool all_large_simple = true;    // multiplicity 1 for every |lambda| > large_threshold
  double large_threshold = 10.0;
  int zeros_considered = 0;
};

AsymptoticsReport strip_report(const ZeroCatalog& catalog, double r = 1.0);

/// JSON persistence (schema 1). Serialisation keeps full double precision;
/// round-trips are exact.
std::string catalog_to_json(const ZeroCatalog& catalog);
ZeroCatalog catalog_from_json(const std::string& text);

}  // namespace diskmean
