#pragma once

#include <functional>
#include <vector>

#include "maxineq/orlicz.hpp"

namespace maxineq {

struct Atom {
  double value;
  double weight;
};

// Finite-support law of a random variable: strictly positive weights
// summing to 1. Expectations against it are exact.
class EmpiricalRV {
 public:
  explicit EmpiricalRV(std::vector<Atom> atoms, bool centered = false);
  static EmpiricalRV from_values(const std::vector<double>& values);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double mean() const;
  double max_abs() const;
  bool centered() const { return centered_; }

 private:
  std::vector<Atom> atoms_;
  bool centered_ = false;
};

// Subtracts the mean; idempotent on already-centered input.
EmpiricalRV center(const EmpiricalRV& rv);

// (E |X|^beta)^{1/beta}; beta = inf gives the essential supremum.
double beta_norm(const EmpiricalRV& rv, double beta);

// inf{sigma > 0 : E psi(|X|/sigma) <= 1}, by bisection on the monotone map.
double luxemburg_norm(const EmpiricalRV& rv, const OrliczSpec& spec);

// inf_{t>0} (1 + E psi(|tX|)) / t. The callable form accepts any convex
// psi as a plain function (values may be +inf), which is how the bound
// engine feeds conjugates in.
double amemiya_norm(const EmpiricalRV& rv, const std::function<double(double)>& psi);
double amemiya_norm(const EmpiricalRV& rv, const OrliczSpec& spec);

struct AmemiyaPoint {
  double norm;
  double t;  // minimizing t (cap value when the inf is approached at t -> inf)
  bool hit_cap;
};
// Amemiya norm of (X - shift).
AmemiyaPoint amemiya_norm_shifted(const EmpiricalRV& rv, double shift,
                                  const std::function<double(double)>& psi);

}  // namespace maxineq
