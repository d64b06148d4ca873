#include "maxineq/rv_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "maxineq/optimize.hpp"

namespace maxineq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

EmpiricalRV::EmpiricalRV(std::vector<Atom> atoms, bool centered)
    : atoms_(std::move(atoms)), centered_(centered) {
  if (atoms_.empty()) throw std::domain_error("EmpiricalRV: needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0)) throw std::domain_error("EmpiricalRV: weights must be > 0");
    if (!std::isfinite(a.value)) throw std::domain_error("EmpiricalRV: values must be finite");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("EmpiricalRV: weights must sum to 1 within 1e-12");
}

EmpiricalRV EmpiricalRV::from_values(const std::vector<double>& values) {
  if (values.empty()) throw std::domain_error("EmpiricalRV: needs at least one value");
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  double w = 1.0 / static_cast<double>(values.size());
  for (double v : values) atoms.push_back({v, w});
  // fix up rounding so the sum is exactly renormalized
  double total = w * static_cast<double>(values.size());
  for (auto& a : atoms) a.weight /= total;
  return EmpiricalRV(std::move(atoms));
}

double EmpiricalRV::mean() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight * a.value;
  return m;
}

double EmpiricalRV::max_abs() const {
  double m = 0.0;
  for (const auto& a : atoms_) m = std::max(m, std::abs(a.value));
  return m;
}

EmpiricalRV center(const EmpiricalRV& rv) {
  double m = rv.mean();
  std::vector<Atom> atoms = rv.atoms();
  for (auto& a : atoms) a.value -= m;
  return EmpiricalRV(std::move(atoms), true);
}

double beta_norm(const EmpiricalRV& rv, double beta) {
  if (std::isinf(beta)) return rv.max_abs();
  if (!(beta >= 1.0)) throw std::domain_error("beta_norm: beta must be >= 1 or inf");
  double s = 0.0;
  for (const auto& a : rv.atoms()) s += a.weight * std::pow(std::abs(a.value), beta);
  return std::pow(s, 1.0 / beta);
}

double luxemburg_norm(const EmpiricalRV& rv, const OrliczSpec& spec) {
  double mx = rv.max_abs();
  if (mx == 0.0) return 0.0;
  auto modular = [&](double sigma) {
    double s = 0.0;
    for (const auto& a : rv.atoms()) {
      ExtendedReal v = evaluate(spec, std::abs(a.value) / sigma);
      if (v.is_infinite()) return kInf;
      s += a.weight * v.as_double();
    }
    return s;
  };
  double hi = std::max(mx, 1.0);
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("luxemburg_norm: modular never drops below 1");
  }
  double lo = hi;
  while (modular(lo * 0.5) <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-300)
      throw std::runtime_error("luxemburg_norm: psi is degenerate (modular never exceeds 1)");
  }
  lo *= 0.5;
  for (int i = 0; i < 200 && (hi - lo) > 1e-10 * hi + 1e-300; ++i) {
    double mid = 0.5 * (lo + hi);
    if (modular(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

AmemiyaPoint amemiya_norm_shifted(const EmpiricalRV& rv, double shift,
                                  const std::function<double(double)>& psi) {
  double mx = 0.0;
  for (const auto& a : rv.atoms()) mx = std::max(mx, std::abs(a.value - shift));
  if (mx == 0.0) return {0.0, kInf, false};
  auto objective = [&](double t) {
    double s = 1.0;
    for (const auto& a : rv.atoms()) {
      double v = psi(t * std::abs(a.value - shift));
      if (std::isinf(v)) return kInf;
      s += a.weight * v;
    }
    return s / t;
  };
  // start the bracket near the scale of the data
  double hi0 = 1.0 / mx;
  opt::ScalarMin r = opt::minimize_positive(objective, hi0 * 1e-8, hi0, 1e12, 1e-18);
  return {r.value, r.x, r.hit_cap};
}

double amemiya_norm(const EmpiricalRV& rv, const std::function<double(double)>& psi) {
  return amemiya_norm_shifted(rv, 0.0, psi).norm;
}

double amemiya_norm(const EmpiricalRV& rv, const OrliczSpec& spec) {
  return amemiya_norm(rv, [&spec](double x) { return evaluate(spec, x).as_double(); });
}

}  // namespace maxineq
