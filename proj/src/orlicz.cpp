#include "maxineq/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxineq/optimize.hpp"

namespace maxineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << what << ": argument must be >= 0, got " << x;
    throw std::domain_error(os.str());
  }
}

}  // namespace

OrliczSpec OrliczSpec::power(double p) {
  if (!(p >= 1.0)) throw std::domain_error("OrliczSpec::power: exponent must be >= 1");
  OrliczSpec s;
  s.family_ = OrliczFamily::Power;
  s.p_ = p;
  return s;
}

OrliczSpec OrliczSpec::sub_gaussian_quadratic(double scale) {
  if (!(scale > 0.0))
    throw std::domain_error("OrliczSpec::sub_gaussian_quadratic: scale must be > 0");
  OrliczSpec s;
  s.family_ = OrliczFamily::SubGaussianQuadratic;
  s.scale_ = scale;
  return s;
}

OrliczSpec OrliczSpec::tabulated(std::vector<Knot> knots, double domain_bound) {
  if (knots.size() < 2) throw std::domain_error("tabulated spec needs at least two knots");
  if (knots.front().x != 0.0 || knots.front().y != 0.0)
    throw std::domain_error("tabulated spec must start at the knot (0, 0)");
  double prev_slope = -kInf;
  for (std::size_t j = 1; j < knots.size(); ++j) {
    if (!(knots[j].x > knots[j - 1].x))
      throw std::domain_error("tabulated knots must be strictly increasing in x");
    if (!(knots[j].y >= 0.0))
      throw std::domain_error("tabulated knot values must be >= 0");
    double slope = (knots[j].y - knots[j - 1].y) / (knots[j].x - knots[j - 1].x);
    if (slope < prev_slope - 1e-12)
      throw std::domain_error("tabulated knots must be convex (nondecreasing slopes)");
    prev_slope = std::max(prev_slope, slope);
  }
  if (!(domain_bound > knots.back().x) && !(domain_bound == kInf))
    throw std::domain_error("domain bound must exceed the last knot");
  bool vanishes = knots.back().y == 0.0 && prev_slope == 0.0;
  if (vanishes)
    throw std::domain_error("tabulated spec is identically 0 on (0, inf)");
  OrliczSpec s;
  s.family_ = OrliczFamily::Tabulated;
  s.knots_ = std::move(knots);
  s.b_ = domain_bound;
  return s;
}

std::string OrliczSpec::describe() const {
  std::ostringstream os;
  switch (family_) {
    case OrliczFamily::Power:
      os << "power(p=" << p_ << ")";
      break;
    case OrliczFamily::SubGaussianQuadratic:
      os << "subgaussian(scale=" << scale_ << ")";
      break;
    case OrliczFamily::Tabulated:
      os << "tabulated(" << knots_.size() << " knots, b=" << b_ << ")";
      break;
  }
  return os.str();
}

ExtendedReal evaluate(const OrliczSpec& spec, double x) {
  require_nonnegative(x, "evaluate");
  if (x >= spec.domain_bound()) return ExtendedReal::infinity();
  switch (spec.family()) {
    case OrliczFamily::Power:
      return ExtendedReal(std::pow(x, spec.exponent()));
    case OrliczFamily::SubGaussianQuadratic: {
      double s = spec.scale();
      return ExtendedReal(x * x * s * s / 2.0);
    }
    case OrliczFamily::Tabulated: {
      const auto& k = spec.knots();
      if (x <= k.front().x) return ExtendedReal(0.0);
      for (std::size_t j = 1; j < k.size(); ++j) {
        if (x <= k[j].x) {
          double w = (x - k[j - 1].x) / (k[j].x - k[j - 1].x);
          return ExtendedReal(k[j - 1].y + w * (k[j].y - k[j - 1].y));
        }
      }
      // beyond the table: extend with the last slope up to the bound
      std::size_t last = k.size() - 1;
      double slope = (k[last].y - k[last - 1].y) / (k[last].x - k[last - 1].x);
      return ExtendedReal(k[last].y + slope * (x - k[last].x));
    }
  }
  throw std::logic_error("evaluate: unknown family");
}

ConjugatePoint conjugate_detail(const OrliczSpec& spec, double y) {
  require_nonnegative(y, "conjugate");
  switch (spec.family()) {
    case OrliczFamily::Power: {
      double p = spec.exponent();
      if (p == 1.0) {
        if (y <= 1.0) return {ExtendedReal(0.0), 0.0};
        return {ExtendedReal::infinity(), kInf};
      }
      double lam = std::pow(y / p, 1.0 / (p - 1.0));
      double value = (p - 1.0) * std::pow(y / p, p / (p - 1.0));
      return {ExtendedReal(value), lam};
    }
    case OrliczFamily::SubGaussianQuadratic: {
      double s = spec.scale();
      return {ExtendedReal(y * y / (2.0 * s * s)), y / (s * s)};
    }
    case OrliczFamily::Tabulated: {
      const auto& k = spec.knots();
      std::size_t last = k.size() - 1;
      double tail_slope = (k[last].y - k[last - 1].y) / (k[last].x - k[last - 1].x);
      double b = spec.domain_bound();
      if (b == kInf && y > tail_slope) return {ExtendedReal::infinity(), kInf};
      double best = 0.0;  // lambda -> 0+ gives 0
      double arg = 0.0;
      for (const auto& kn : k) {
        double v = kn.x * y - kn.y;
        if (v > best) {
          best = v;
          arg = kn.x;
        }
      }
      if (b < kInf) {
        double at_b = b * y - (k[last].y + tail_slope * (b - k[last].x));
        if (at_b > best) {
          best = at_b;
          arg = b;
        }
      }
      return {ExtendedReal(best), arg};
    }
  }
  throw std::logic_error("conjugate: unknown family");
}

ExtendedReal conjugate(const OrliczSpec& spec, double y) {
  return conjugate_detail(spec, y).value;
}

std::function<double(double)> conjugate_fn(const OrliczSpec& spec) {
  return [spec](double y) { return conjugate(spec, y).as_double(); };
}

double generalized_inverse_bisect(const OrliczSpec& spec, double y) {
  require_nonnegative(y, "generalized_inverse");
  auto above = [&](double t) { return evaluate(spec, t) > y; };
  if (above(0.0)) return 0.0;
  double hi = 1.0;
  while (!above(hi)) {
    hi *= 2.0;
    if (hi > 1e15)
      throw std::runtime_error(
          "generalized_inverse: super-level set is empty (psi bounded by y)");
  }
  return opt::bisect_threshold(above, 0.0, hi, 1e-12, 1e-13);
}

double generalized_inverse(const OrliczSpec& spec, double y) {
  require_nonnegative(y, "generalized_inverse");
  switch (spec.family()) {
    case OrliczFamily::Power:
      return std::pow(y, 1.0 / spec.exponent());
    case OrliczFamily::SubGaussianQuadratic:
      return std::sqrt(2.0 * y) / spec.scale();
    case OrliczFamily::Tabulated:
      return generalized_inverse_bisect(spec, y);
  }
  throw std::logic_error("generalized_inverse: unknown family");
}

double conjugate_inverse(const OrliczSpec& spec, double y) {
  require_nonnegative(y, "conjugate_inverse");
  auto above = [&](double t) { return conjugate(spec, t) > y; };
  if (above(0.0)) return 0.0;
  double hi = 1.0;
  while (!above(hi)) {
    hi *= 2.0;
    if (hi > 1e15)
      throw std::runtime_error("conjugate_inverse: psi* is bounded by y everywhere");
  }
  return opt::bisect_threshold(above, 0.0, hi, 1e-13, 1e-13);
}

double conjugate_inverse_variational(const OrliczSpec& spec, double y) {
  require_nonnegative(y, "conjugate_inverse_variational");
  auto objective = [&](double lam) {
    ExtendedReal v = evaluate(spec, lam);
    if (v.is_infinite()) return kInf;
    return (y + v.as_double()) / lam;
  };
  double b = spec.domain_bound();
  opt::ScalarMin r;
  if (b == kInf) {
    r = opt::minimize_positive(objective, 1e-8, 1.0, 1e12, 1e-18);
  } else {
    r = opt::golden_min_log(objective, 1e-14, b * (1.0 - 1e-12));
  }
  return r.value;
}

}  // namespace maxineq
