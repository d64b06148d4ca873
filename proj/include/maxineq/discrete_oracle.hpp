#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxineq/orlicz.hpp"
#include "maxineq/rv_norms.hpp"
#include "maxineq/selection_entropy.hpp"

namespace maxineq {

// Exact finite joint law of (Z_1..Z_n, T): m support vectors with their
// probabilities and the selection kernel P(T = i | Z = z_k) as rows.
struct FiniteJointInstance {
  std::size_t n = 0;
  std::vector<std::vector<double>> z_support;  // m rows of n values
  std::vector<double> z_probs;                 // m entries, sum 1
  std::vector<std::vector<double>> kernel;     // m rows, each a probability vector

  std::size_t states() const { return z_support.size(); }
  void validate() const;  // throws on malformed probabilities or the m*n cap
};

// Subtracts each coordinate's marginal mean from the support.
FiniteJointInstance center_coordinates(FiniteJointInstance joint);

// E[Z_T] = sum_k p_k sum_i kernel[k][i] z_k[i], exact.
double exact_selected_mean(const FiniteJointInstance& joint);

// E[max_i Z_i], exact.
double exact_max_mean(const FiniteJointInstance& joint);

// P_T(i) = sum_k p_k kernel[k][i].
SelectionMarginal selection_marginal(const FiniteJointInstance& joint);

// Law of P(T = i | Z), atoms merged on exactly equal values. i is 0-based.
EmpiricalRV conditional_probability_rv(const FiniteJointInstance& joint, std::size_t i);

// Largest Luxemburg norm among the coordinate marginal laws.
double coordinate_sigma(const FiniteJointInstance& joint, const OrliczSpec& spec);

// Brute-force grid oracles for the bound-engine optimizers. Grids are
// refined around the incumbent so the result is accurate well past the
// raw grid spacing. n <= 4 and resolution <= 2001 (refusal error beyond).
double grid_minimize_bound(const FiniteJointInstance& joint, const OrliczSpec& spec,
                           double sigma, int resolution);
double grid_minimize_bound(const SelectionMarginal& m, const OrliczSpec& spec,
                           double sigma, int resolution);
double grid_pnorm_conditional(const FiniteJointInstance& joint, double p,
                              double sigma, int resolution);
double grid_pnorm_marginal(const SelectionMarginal& m, double p, double sigma,
                           int resolution);

// Plain-text instance files: "n <count>", "m <count>", m "z ..." rows,
// one "p ..." row, m "k ..." rows; '#' starts a comment. Errors carry the
// offending line number.
FiniteJointInstance parse_instance(std::istream& in);
FiniteJointInstance parse_instance_file(const std::string& path);
std::string format_instance(const FiniteJointInstance& joint);

}  // namespace maxineq
