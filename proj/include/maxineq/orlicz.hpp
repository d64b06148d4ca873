#pragma once

#include <functional>
#include <string>
#include <vector>

#include "maxineq/extended_real.hpp"

namespace maxineq {

enum class OrliczFamily { Power, SubGaussianQuadratic, Tabulated };

struct Knot {
  double x;
  double y;
};

// Descriptor of a convex envelope function psi on [0, b): either a power
// x^p, the quadratic lambda^2 sigma0^2 / 2, or a convex piecewise-linear
// table. Power and quadratic families live on [0, inf).
class OrliczSpec {
 public:
  static OrliczSpec power(double p);
  static OrliczSpec sub_gaussian_quadratic(double scale);
  // knots must start at (0, 0), be strictly increasing in x with
  // nondecreasing slopes. With a finite domain bound the function is +inf
  // from the bound on; with b = inf the last slope extends the table.
  static OrliczSpec tabulated(std::vector<Knot> knots,
                              double domain_bound = std::numeric_limits<double>::infinity());

  OrliczFamily family() const { return family_; }
  double exponent() const { return p_; }
  double scale() const { return scale_; }
  const std::vector<Knot>& knots() const { return knots_; }
  double domain_bound() const { return b_; }
  std::string describe() const;

 private:
  OrliczSpec() = default;
  OrliczFamily family_ = OrliczFamily::Power;
  double p_ = 2.0;
  double scale_ = 1.0;
  std::vector<Knot> knots_;
  double b_ = std::numeric_limits<double>::infinity();
};

// psi(x); +inf from the domain bound on.
ExtendedReal evaluate(const OrliczSpec& spec, double x);

// Convex conjugate psi*(y) = sup_{lambda in (0,b)} (lambda y - psi(lambda)).
// Closed form for every family (the conjugate of a piecewise-linear
// function is evaluated knot by knot).
ExtendedReal conjugate(const OrliczSpec& spec, double y);

struct ConjugatePoint {
  ExtendedReal value;
  double maximizer;  // lambda attaining (or approaching) the sup
};
ConjugatePoint conjugate_detail(const OrliczSpec& spec, double y);

// inf{t >= 0 : psi(t) > y}. Closed form for Power and the quadratic,
// bisection for tables. Throws if the super-level set is empty.
double generalized_inverse(const OrliczSpec& spec, double y);

// Pure bisection path of the same quantity; cross-check for the closed forms.
double generalized_inverse_bisect(const OrliczSpec& spec, double y);

// psi*^{-1}(y) = inf{t >= 0 : psi*(t) > y}, by super-level-set bisection.
double conjugate_inverse(const OrliczSpec& spec, double y);

// The same quantity through the variational identity
// psi*^{-1}(y) = inf_{lambda in (0,b)} (y + psi(lambda)) / lambda.
double conjugate_inverse_variational(const OrliczSpec& spec, double y);

// psi*(y) as a plain double-valued callable (+inf passes through).
std::function<double(double)> conjugate_fn(const OrliczSpec& spec);

}  // namespace maxineq
