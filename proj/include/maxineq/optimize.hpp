#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace maxineq::opt {

struct ScalarMin {
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
  bool hit_cap = false;  // bracket expansion stopped at the t-cap
};

// Golden-section minimization on [lo, hi]. The objective may return +inf;
// ties (including inf == inf) shrink the interval from the right so an
// infeasible right tail is discarded first. Requires a unimodal
// (quasiconvex) objective.
inline ScalarMin golden_min(const std::function<double(double)>& f, double lo,
                            double hi, double tol = 1e-12, int max_iter = 300) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  ScalarMin r;
  r.x = (fc <= fd) ? c : d;
  r.value = std::min(fc, fd);
  double fmidpoint = f(0.5 * (a + b));
  if (fmidpoint < r.value) {
    r.x = 0.5 * (a + b);
    r.value = fmidpoint;
  }
  return r;
}

// Minimization over a bounded positive interval, carried out in log
// coordinates so huge ranges cost only a handful of extra iterations.
inline ScalarMin golden_min_log(const std::function<double(double)>& f,
                                double lo, double hi, double log_tol = 1e-11) {
  auto g = [&f](double u) { return f(std::exp(u)); };
  ScalarMin r = golden_min(g, std::log(lo), std::log(hi), log_tol, 400);
  r.x = std::exp(r.x);
  return r;
}

// Minimization over t > 0 with an unknown scale: bracket expansion by
// doubling from [lo0, hi0] until the objective stops improving at both
// ends (capped at [floor, cap]), then golden-section in log space.
inline ScalarMin minimize_positive(const std::function<double(double)>& f,
                                   double lo0 = 1e-8, double hi0 = 1.0,
                                   double cap = 1e12, double floor = 1e-18) {
  double lo = lo0, hi = hi0;
  bool hit_cap = false;
  double fhi = f(hi);
  while (hi * 2.0 <= cap) {
    double fnext = f(hi * 2.0);
    if (!(fnext < fhi)) break;
    hi *= 2.0;
    fhi = fnext;
  }
  // the minimum may sit between the last improving point and its double
  if (hi * 2.0 <= cap) {
    hi *= 2.0;
    fhi = f(hi);
  } else {
    double fcap = f(cap);
    if (fcap < fhi) hit_cap = true;  // still descending at the cap
    if (fcap <= fhi) {
      hi = cap;
      fhi = fcap;
    }
  }
  double flo = f(lo);
  while (lo * 0.5 >= floor) {
    double fnext = f(lo * 0.5);
    if (!(fnext < flo)) break;
    lo *= 0.5;
    flo = fnext;
  }
  if (lo * 0.5 >= floor) {
    lo *= 0.5;
    flo = f(lo);
  }
  ScalarMin r = golden_min_log(f, lo, hi);
  if (flo < r.value) {
    r.x = lo;
    r.value = flo;
  }
  if (fhi < r.value) {
    r.x = hi;
    r.value = fhi;
  }
  r.hit_cap = hit_cap;
  return r;
}

// Boundary of a monotone false -> true predicate on [lo, hi]. pred(hi)
// must hold; returns the midpoint of the final bracket.
inline double bisect_threshold(const std::function<bool(double)>& pred,
                               double lo, double hi, double tol_abs = 1e-12,
                               double tol_rel = 1e-13, int max_iter = 300) {
  for (int i = 0; i < max_iter && (hi - lo) > tol_abs + tol_rel * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Refined grid minimization: dense sweep, then repeated zoom around the
// incumbent. Pure evaluation, no derivative or section logic; used as an
// independent oracle for the golden-section paths.
inline ScalarMin grid_min_1d(const std::function<double(double)>& f, double lo,
                             double hi, int resolution, int passes = 3) {
  double a = lo, b = hi;
  ScalarMin best;
  for (int pass = 0; pass < passes; ++pass) {
    int ibest = 0;
    double step = (b - a) / (resolution - 1);
    for (int i = 0; i < resolution; ++i) {
      double x = a + step * i;
      double fx = f(x);
      if (fx < best.value) {
        best.value = fx;
        best.x = x;
        ibest = i;
      }
    }
    double na = a + step * std::max(0, ibest - 2);
    double nb = a + step * std::min(resolution - 1, ibest + 2);
    a = std::max(lo, na);
    b = std::min(hi, nb);
  }
  return best;
}

}  // namespace maxineq::opt
