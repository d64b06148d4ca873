#pragma once

#include <cstddef>
#include <vector>

namespace maxineq {

struct FiniteJointInstance;

// Probability vector of the selection index T over {1..n}.
class SelectionMarginal {
 public:
  explicit SelectionMarginal(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  // max entry >= 1 - 1e-12; floating marginals from estimation never hit 1.
  bool deterministic() const;

 private:
  std::vector<double> probs_;
};

// H(T) in nats, with 0 ln(1/0) = 0.
double shannon_entropy(const SelectionMarginal& m);

struct MinTerm {
  double value;
  double argmin;
};
// min_{x in [0,1]} a (1-x)^q + (1-a) x^q, closed form, with its argmin.
MinTerm pointwise_min_term(double a, double q);

// The H(T;q) functional, q in [1, inf] (pass +inf for the inf branch).
double h_q(const SelectionMarginal& m, double q);

// Exact plug-in I(T;Z) in nats on a finite discrete joint.
double mutual_information(const FiniteJointInstance& joint);

}  // namespace maxineq
