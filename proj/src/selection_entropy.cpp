#include "maxineq/selection_entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "maxineq/discrete_oracle.hpp"

namespace maxineq {

namespace {
constexpr double kDeterministicThreshold = 1.0 - 1e-12;
}

SelectionMarginal::SelectionMarginal(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::domain_error("SelectionMarginal: empty");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("SelectionMarginal: entries must lie in [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("SelectionMarginal: entries must sum to 1 within 1e-12");
}

bool SelectionMarginal::deterministic() const {
  for (double p : probs_)
    if (p >= kDeterministicThreshold) return true;
  return false;
}

double shannon_entropy(const SelectionMarginal& m) {
  double h = 0.0;
  for (double p : m.probs())
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

MinTerm pointwise_min_term(double a, double q) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("pointwise_min_term: a must be in [0, 1]");
  if (!(q >= 1.0)) throw std::domain_error("pointwise_min_term: q must be >= 1");
  if (a == 0.0) return {0.0, 0.0};
  if (a == 1.0) return {0.0, 1.0};
  if (q == 1.0) {
    if (a <= 0.5) return {a, 0.0};
    return {1.0 - a, 1.0};
  }
  // (a^e + (1-a)^e)^{1-q} with e = 1/(1-q), in log space: a^e overflows
  // for q near 1 even though the result is tame
  double e = 1.0 / (1.0 - q);
  double ea = e * std::log(a), eb = e * std::log(1.0 - a);
  double big = std::max(ea, eb);
  double lse = big + std::log1p(std::exp(std::min(ea, eb) - big));
  double value = std::exp((1.0 - q) * lse);
  double ra = std::pow(a, 1.0 / (q - 1.0));
  double rb = std::pow(1.0 - a, 1.0 / (q - 1.0));
  return {value, ra / (ra + rb)};
}

double h_q(const SelectionMarginal& m, double q) {
  if (std::isinf(q)) return m.deterministic() ? 0.0 : 0.5;
  if (!(q >= 1.0)) throw std::domain_error("h_q: q must be >= 1 or inf");
  if (q == 1.0) {
    double s = 0.0;
    for (double p : m.probs()) s += std::min(p, 1.0 - p);
    return s;
  }
  double s = 0.0;
  for (double p : m.probs()) s += pointwise_min_term(p, q).value;
  return std::pow(s, 1.0 / q);
}

double mutual_information(const FiniteJointInstance& joint) {
  SelectionMarginal pt = selection_marginal(joint);
  double mi = 0.0;
  for (std::size_t k = 0; k < joint.states(); ++k) {
    double pz = joint.z_probs[k];
    if (pz <= 0.0) continue;
    for (std::size_t i = 0; i < joint.n; ++i) {
      double pzt = pz * joint.kernel[k][i];
      if (pzt > 0.0) mi += pzt * std::log(pzt / (pz * pt.probs()[i]));
    }
  }
  return mi;
}

}  // namespace maxineq
