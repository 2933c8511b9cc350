#include "diskmean/zeroscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "diskmean/errors.hpp"
#include "diskmean/rng.hpp"
#include "diskmean/version.hpp"

namespace diskmean {
namespace {

using C = std::complex<double>;
using Fn = std::function<C(C)>;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

double Rect::diam() const { return std::hypot(width(), height()); }

int winding_number(const Fn& f, const Fn& f_deriv, const Rect& rect, const WindingOptions& opts) {
  if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0)) {
    throw ValidationError("winding_number: degenerate rectangle");
  }
  const C corners[5] = {{rect.x0, rect.y0},
                        {rect.x1, rect.y0},
                        {rect.x1, rect.y1},
                        {rect.x0, rect.y1},
                        {rect.x0, rect.y0}};

  double ppu = opts.panels_per_unit;
  bool have_prev = false;
  double prev_est = 0.0;
  for (;;) {
    long total_points = 0;
    C integral(0.0, 0.0);
    double min_abs = std::numeric_limits<double>::infinity();
    for (int e = 0; e < 4; ++e) {
      const C a = corners[e], b = corners[e + 1];
      const double len = std::abs(b - a);
      const int n = std::max(4, static_cast<int>(std::ceil(len * ppu)));
      const C dz = (b - a) / static_cast<double>(n);
      C g_prev;
      for (int i = 0; i <= n; ++i) {
        const C zz = a + (b - a) * (static_cast<double>(i) / n);
        const C fv = f(zz);
        min_abs = std::min(min_abs, std::abs(fv));
        const C g = f_deriv(zz) / fv;
        if (i > 0) integral += 0.5 * (g_prev + g) * dz;
        g_prev = g;
      }
      total_points += n + 1;
    }
    if (min_abs < opts.clearance) {
      throw BoundaryTooCloseError("winding_number: |f| = " + std::to_string(min_abs) +
                                  " on the contour is below clearance");
    }
    const C est_c = integral / (2.0 * kPi * C(0.0, 1.0));
    const double est = est_c.real();
    const double rounded = std::round(est);
    const bool integer_ok =
        std::abs(est - rounded) <= opts.integer_gap && std::abs(est_c.imag()) <= opts.integer_gap;
    if (have_prev && std::abs(est - prev_est) <= opts.stability_tol && integer_ok) {
      return static_cast<int>(rounded);
    }
    have_prev = true;
    prev_est = est;
    if (2 * total_points > opts.max_total_points) {
      throw WindingUnstableError(
          "winding_number: estimate " + std::to_string(est) +
          " did not stabilise within the point budget on rect [" + std::to_string(rect.x0) +
          ", " + std::to_string(rect.x1) + "] x [" + std::to_string(rect.y0) + ", " +
          std::to_string(rect.y1) + "]");
    }
    ppu *= 2.0;
  }
}

double strip_height(double lambda_max) { return 3.0 * std::log1p(lambda_max) + 2.0; }

namespace {

struct ScanContext {
  const CharFn* fn;
  Fn f, fd;  // origin-deflated: F = G / w^{2(m-s)}, same nonzero zeros as G
  ScanOptions opts;
  std::vector<std::pair<C, int>> found;  // first-quadrant zeros and multiplicities
};

// Deterministic jitter in [0, 1) keyed on the scan seed and a cell signature.
double jitter01(const ScanOptions& opts, double a, double b, int attempt, int salt) {
  std::uint64_t h = opts.seed;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  };
  std::uint64_t ba, bb;
  std::memcpy(&ba, &a, 8);
  std::memcpy(&bb, &b, 8);
  mix(ba);
  mix(bb);
  mix(static_cast<std::uint64_t>(attempt) * 1315423911ull);
  mix(static_cast<std::uint64_t>(salt) * 2654435761ull);
  Rng r(h);
  return r.next_double();
}

// Newton refinement with multiplicity mu; returns the refined point or
// nothing when the iteration leaves the trust region or stalls.
std::optional<C> refine_newton(const ScanContext& ctx, C start, int mu, const Rect& trust) {
  C z = start;
  for (int it = 0; it < ctx.opts.newton_max_iter; ++it) {
    const C fv = ctx.f(z);
    const C dv = ctx.fd(z);
    if (!(std::abs(dv) > 0.0)) return std::nullopt;
    const C step = static_cast<double>(mu) * fv / dv;
    z -= step;
    if (!trust.contains(z, 2.0 * trust.diam() + 0.5)) return std::nullopt;
    if (std::abs(step) <= ctx.opts.newton_tol * std::max(1.0, std::abs(z))) {
      // two polish iterations
      for (int t = 0; t < 2; ++t) {
        const C f2 = ctx.f(z);
        const C d2 = ctx.fd(z);
        if (!(std::abs(d2) > 0.0)) break;
        z -= static_cast<double>(mu) * f2 / d2;
      }
      return z;
    }
  }
  return std::nullopt;
}

int winding_cell(const ScanContext& ctx, const Rect& r) {
  return winding_number(ctx.f, ctx.fd, r, ctx.opts.winding);
}

void scan_cell(ScanContext& ctx, const Rect& cell, int n, int depth);

// Split a cell whose winding is n >= 1 into four children with jittered split
// lines; child windings must reconcile with the parent before recursing.
void split_cell(ScanContext& ctx, const Rect& cell, int n, int depth) {
  for (int attempt = 0; attempt < ctx.opts.max_split_attempts; ++attempt) {
    const double fx = 0.5 + 0.1 * (jitter01(ctx.opts, cell.x0, cell.x1, attempt, 1) - 0.5);
    const double fy = 0.5 + 0.1 * (jitter01(ctx.opts, cell.y0, cell.y1, attempt, 2) - 0.5);
    const double xm = cell.x0 + fx * cell.width();
    const double ym = cell.y0 + fy * cell.height();
    const Rect child[4] = {{cell.x0, xm, cell.y0, ym},
                           {xm, cell.x1, cell.y0, ym},
                           {cell.x0, xm, ym, cell.y1},
                           {xm, cell.x1, ym, cell.y1}};
    int w[4];
    int sum = 0;
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      try {
        w[i] = winding_cell(ctx, child[i]);
      } catch (const BoundaryTooCloseError&) {
        ok = false;
        break;
      } catch (const WindingUnstableError&) {
        ok = false;
        break;
      }
      sum += w[i];
    }
    if (!ok || sum != n) continue;  // a zero sits on a split line; re-jitter
    for (int i = 0; i < 4; ++i) {
      if (w[i] > 0) scan_cell(ctx, child[i], w[i], depth + 1);
    }
    return;
  }
  throw CertificationError("find_zeros: could not split cell [" + std::to_string(cell.x0) +
                           ", " + std::to_string(cell.x1) + "] x [" + std::to_string(cell.y0) +
                           ", " + std::to_string(cell.y1) + "] without hitting a zero");
}

void scan_cell(ScanContext& ctx, const Rect& cell, int n, int depth) {
  if (depth > 60) throw CertificationError("find_zeros: subdivision depth exceeded");
  if (n <= 0) return;
  // Simple-zero shortcut: Newton from the centre certifies when it lands
  // inside this cell (winding 1 implies a unique simple zero here).
  if (n == 1 && cell.diam() <= 0.75) {
    if (auto z = refine_newton(ctx, cell.center(), 1, cell)) {
      if (cell.contains(*z)) {
        ctx.found.emplace_back(*z, 1);
        return;
      }
    }
  }
  if (cell.diam() < ctx.opts.cell_min_diam) {
    if (auto z = refine_newton(ctx, cell.center(), n, cell)) {
      if (cell.contains(*z, cell.diam())) {
        ctx.found.emplace_back(*z, n);
        return;
      }
    }
    throw CertificationError("find_zeros: refinement failed in a minimal cell near (" +
                             std::to_string(cell.center().real()) + ", " +
                             std::to_string(cell.center().imag()) + ")");
  }
  split_cell(ctx, cell, n, depth);
}

int certified_winding_square(const ScanContext& ctx, C center, double h) {
  double hh = h;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Rect r{center.real() - hh, center.real() + hh, center.imag() - hh, center.imag() + hh};
    try {
      return winding_number(ctx.f, ctx.fd, r, ctx.opts.winding);
    } catch (const BoundaryTooCloseError&) {
      hh *= 0.75;
    } catch (const WindingUnstableError&) {
      hh *= 0.75;
    }
  }
  throw CertificationError("find_zeros: could not certify an isolating contour");
}

}  // namespace

ZeroCatalog find_zeros(int m, int s, const ScanOptions& opts) {
  validate(EquationParams{m, s, 1.0});
  if (!(opts.lambda_max >= 2.0 && opts.lambda_max <= 200.0)) {
    throw ValidationError("find_zeros: lambda_max outside [2, 200]");
  }
  const double H = strip_height(opts.lambda_max);
  const double X =
      opts.lambda_max + 0.3 + 0.1 * jitter01(opts, opts.lambda_max, H, 0, 3);
  Envelope env;
  env.max_abs = std::hypot(X, H) + 2.0;
  env.max_imag = H + 2.0;

  CharFn fn(m, s, env);
  ScanContext ctx;
  ctx.fn = &fn;
  // Deflate the high-order origin zero out of everything the scan integrates
  // over; otherwise the quadrant corner at ~1e-4 trips the clearance check.
  // F = G / w^{2(m-s)} is analytic with F(0) = leading coefficient != 0, and
  // F' = G'/w^{2mu} - 2mu G/w^{2mu+1}.
  const int mu2 = 2 * (m - s);
  auto wpow = [mu2](C w) {
    C p(1.0, 0.0);
    for (int i = 0; i < mu2; ++i) p *= w;
    return p;
  };
  ctx.f = [&fn, wpow](C w) { return fn.eval(w) / wpow(w); };
  ctx.fd = [&fn, wpow, mu2](C w) {
    const C p = wpow(w);
    return fn.eval_deriv(w) / p - static_cast<double>(mu2) * fn.eval(w) / (p * w);
  };
  ctx.opts = opts;

  const Fn raw_f = [&fn](C w) { return fn.eval(w); };
  const Fn raw_fd = [&fn](C w) { return fn.eval_deriv(w); };

  // Origin multiplicity: certified on the undeflated G at shrinking radii.
  const int expected_origin = mu2;
  int origin_mult = -1;
  for (double a : {0.4, 0.2, 0.1}) {
    try {
      origin_mult = winding_number(raw_f, raw_fd, Rect{-a, a, -a, a}, opts.winding);
    } catch (const BoundaryTooCloseError&) {
      continue;
    } catch (const WindingUnstableError&) {
      continue;
    }
    if (origin_mult == expected_origin) break;
  }
  if (origin_mult != expected_origin) {
    throw CertificationError("find_zeros: origin multiplicity " + std::to_string(origin_mult) +
                             " does not match 2(m-s) = " + std::to_string(expected_origin));
  }

  // First-quadrant scan, axes excluded by a thin positive margin. The rect
  // actually scanned is the one whose boundary winding stabilised.
  const double x0 = 1e-4 * (1.0 + 0.5 * jitter01(opts, 0.0, X, 0, 4));
  const double y0 = 1e-4 * (1.0 + 0.5 * jitter01(opts, 0.0, H, 0, 5));
  Rect quarter{x0, X, y0, H};
  int quarter_winding = -1;
  {
    bool done = false;
    for (int attempt = 0; attempt < opts.max_split_attempts && !done; ++attempt) {
      const double bump = 5e-3 * attempt;
      const Rect cand{x0 * (1.0 + 0.3 * attempt), X + bump, y0 * (1.0 + 0.3 * attempt),
                      H + bump};
      try {
        quarter_winding = winding_cell(ctx, cand);
        quarter = cand;
        done = true;
      } catch (const BoundaryTooCloseError&) {
      } catch (const WindingUnstableError&) {
      }
    }
    if (!done) throw CertificationError("find_zeros: quadrant contour would not stabilise");
  }
  if (quarter_winding > 0) scan_cell(ctx, quarter, quarter_winding, 0);

  // Dedup (defensive; the partition should make duplicates impossible).
  std::vector<std::pair<C, int>> zeros;
  for (const auto& [z, mult] : ctx.found) {
    bool merged = false;
    for (auto& [u, umult] : zeros) {
      if (std::abs(u - z) <= opts.dedup_tol) {
        umult += mult;
        merged = true;
        break;
      }
    }
    if (!merged) zeros.emplace_back(z, mult);
  }

  // Real-axis sweep: G is real on the real axis; sign changes would mark
  // zeros missed by the open-quadrant scan.
  std::vector<std::pair<double, int>> axis_zeros;
  {
    const double step = 0.02;
    double xp = x0;
    double vp = ctx.f(C(xp, 0.0)).real();
    for (double x = x0 + step; x <= X; x += step) {
      const double v = ctx.f(C(x, 0.0)).real();
      if (vp * v < 0.0) {
        double lo = xp, hi = x;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double vm = ctx.f(C(mid, 0.0)).real();
          if (vp * vm <= 0.0) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        const double xz = 0.5 * (lo + hi);
        const int mult = certified_winding_square(ctx, C(xz, 0.0), 0.04);
        axis_zeros.emplace_back(xz, mult);
      }
      xp = x;
      vp = v;
    }
  }

  // Completeness: one deflated contour around everything scanned must
  // reconcile with 4 x quadrant + 2 x axis multiplicities (the origin is
  // deflated away; its own certificate is above).
  int total_expected = 0;
  for (const auto& [z, mult] : zeros) total_expected += 4 * mult;
  for (const auto& [x, mult] : axis_zeros) total_expected += 2 * mult;
  {
    int outer = -1;
    bool done = false;
    for (int attempt = 0; attempt < opts.max_split_attempts && !done; ++attempt) {
      const double bump = 1e-3 + 4e-3 * attempt;
      const Rect outer_rect{-X - bump, X + bump, -H - bump, H + bump};
      try {
        outer = winding_number(ctx.f, ctx.fd, outer_rect, ctx.opts.winding);
        done = true;
      } catch (const BoundaryTooCloseError&) {
      } catch (const WindingUnstableError&) {
      }
    }
    if (!done) throw CertificationError("find_zeros: outer contour would not stabilise");
    if (outer != total_expected) {
      throw CertificationError("find_zeros: outer winding " + std::to_string(outer) +
                               " does not reconcile with catalogued multiplicity " +
                               std::to_string(total_expected));
    }
  }

  // Assemble representatives (upper-left quadrant) and certify each.
  ZeroCatalog catalog;
  catalog.m = m;
  catalog.s = s;
  catalog.lambda_max = opts.lambda_max;
  catalog.origin_multiplicity = origin_mult;

  std::vector<std::pair<C, int>> reps;
  for (const auto& [z, mult] : zeros) reps.emplace_back(C(-z.real(), z.imag()), mult);
  for (const auto& [x, mult] : axis_zeros) reps.emplace_back(C(-x, 0.0), mult);

  for (std::size_t i = 0; i < reps.size(); ++i) {
    const C zi = reps[i].first;
    // Distance to every other orbit point (including this zero's mirrors).
    double mind = std::abs(zi);  // origin
    const double rezi = std::abs(zi.real()), imzi = std::abs(zi.imag());
    if (rezi > 0.0 && imzi > 0.0) {
      mind = std::min({mind, 2.0 * rezi, 2.0 * imzi});
    } else if (imzi == 0.0) {
      mind = std::min(mind, 2.0 * rezi);
    }
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (j == i) continue;
      const C zj = reps[j].first;
      const C orbit[4] = {zj, -zj, std::conj(zj), -std::conj(zj)};
      for (const C& o : orbit) mind = std::min(mind, std::abs(zi - o));
    }
    Zero entry;
    entry.lambda = zi;
    entry.multiplicity = reps[i].second;
    entry.abs_g = std::abs(raw_f(zi));
    entry.abs_gprime = std::abs(raw_fd(zi));
    entry.isolation_radius = std::min(0.45 * mind, 0.5);
    if (entry.abs_g > 1e-10) {
      throw CertificationError("find_zeros: refined zero has |G| = " +
                               std::to_string(entry.abs_g));
    }
    const int iso = certified_winding_square(ctx, zi, entry.isolation_radius);
    if (iso != entry.multiplicity) {
      throw CertificationError("find_zeros: isolating winding " + std::to_string(iso) +
                               " does not match multiplicity " +
                               std::to_string(entry.multiplicity));
    }
    catalog.zeros.push_back(entry);
  }

  std::sort(catalog.zeros.begin(), catalog.zeros.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
    if (ma != mb) return ma < mb;
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });
  return catalog;
}

std::vector<Zero> select_scaled_zeros(const ZeroCatalog& catalog, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ValidationError("select_scaled_zeros: r must be positive and finite");
  }
  std::vector<Zero> out;
  for (const Zero& z : catalog.zeros) {
    const C w = z.lambda;
    const C orbit[4] = {w, -w, std::conj(w), -std::conj(w)};
    for (int i = 0; i < 4; ++i) {
      const C cand = orbit[i];
      bool dup = false;
      for (int j = 0; j < i; ++j) {
        if (orbit[j] == cand) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      const bool selected =
          cand.real() < 0.0 || (cand.real() == 0.0 && cand.imag() < 0.0);
      if (!selected) continue;
      Zero s = z;
      s.lambda = cand / r;
      s.abs_gprime = z.abs_gprime * r;  // d/dlambda G(r lambda) = r G'(w)
      s.isolation_radius = z.isolation_radius / r;
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
    if (ma != mb) return ma < mb;
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });
  return out;
}

AsymptoticsReport strip_report(const ZeroCatalog& catalog, double r) {
  if (!(r > 0.0)) throw ValidationError("strip_report: r must be positive");
  AsymptoticsReport rep;
  rep.min_abs_lambda_gprime = std::numeric_limits<double>::infinity();
  for (const Zero& z : catalog.zeros) {
    const C lambda = z.lambda / r;
    const double al = std::abs(lambda);
    if (al <= 4.0 / r) continue;
    ++rep.zeros_considered;
    rep.fitted_c1 = std::max(rep.fitted_c1, std::abs(lambda.imag()) / std::log1p(al));
    // |lambda| |g_r'(lambda)| = |w| |G'(w)|, independent of r.
    rep.min_abs_lambda_gprime =
        std::min(rep.min_abs_lambda_gprime, std::abs(z.lambda) * z.abs_gprime);
    if (al > rep.large_threshold && z.multiplicity != 1) rep.all_large_simple = false;
  }
  if (rep.zeros_considered == 0) rep.min_abs_lambda_gprime = 0.0;
  return rep;
}

std::string catalog_to_json(const ZeroCatalog& catalog) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["m"] = catalog.m;
  j["s"] = catalog.s;
  j["lambda_max"] = catalog.lambda_max;
  j["origin_multiplicity"] = catalog.origin_multiplicity;
  j["zeros"] = nlohmann::json::array();
  for (const Zero& z : catalog.zeros) {
    j["zeros"].push_back({{"re", z.lambda.real()},
                          {"im", z.lambda.imag()},
                          {"mult", z.multiplicity},
                          {"abs_g", z.abs_g},
                          {"abs_gprime", z.abs_gprime},
                          {"isolation_radius", z.isolation_radius}});
  }
  return j.dump(2);
}

ZeroCatalog catalog_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("schema") || j["schema"].get<int>() != kSchemaVersion) {
    throw ValidationError("catalog_from_json: unsupported schema");
  }
  ZeroCatalog catalog;
  catalog.m = j.at("m").get<int>();
  catalog.s = j.at("s").get<int>();
  catalog.lambda_max = j.at("lambda_max").get<double>();
  catalog.origin_multiplicity = j.at("origin_multiplicity").get<int>();
  for (const auto& e : j.at("zeros")) {
    Zero z;
    z.lambda = C(e.at("re").get<double>(), e.at("im").get<double>());
    z.multiplicity = e.at("mult").get<int>();
    z.abs_g = e.at("abs_g").get<double>();
    z.abs_gprime = e.at("abs_gprime").get<double>();
    z.isolation_radius = e.at("isolation_radius").get<double>();
    catalog.zeros.push_back(z);
  }
  return catalog;
}

}  // namespace diskmean
