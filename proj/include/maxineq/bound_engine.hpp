#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxineq/discrete_oracle.hpp"
#include "maxineq/extended_real.hpp"
#include "maxineq/orlicz.hpp"
#include "maxineq/selection_entropy.hpp"

namespace maxineq {

enum class BoundKind {
  MgfClassical,
  OrliczClassical,
  SoftMI,
  SoftEntropy,
  Thm1Conditional,
  Thm1Marginal,
  PnormConditional,
  PnormMarginalHq,
  P1Special,
};

const char* bound_kind_name(BoundKind kind);

struct OptimizerState {
  double t = 0.0;               // minimizing t (marginal bound)
  std::vector<double> a;        // per-coordinate shifts
  std::vector<double> t_terms;  // per-coordinate t (conditional bound)
  bool hit_cap = false;         // bracket expansion reached the t-cap
};

struct BoundReport {
  BoundKind kind;
  ExtendedReal value;
  std::optional<OptimizerState> optimizer;
  std::string inputs_digest;
};

enum class InfoSource { MutualInformation, Entropy };

// psi*^{-1}(ln n); the classical MGF-envelope maximal bound.
BoundReport mgf_bound(const OrliczSpec& spec, std::size_t n);

// sigma * psi^{-1}(n); the classical Orlicz-norm maximal bound.
BoundReport orlicz_bound(const OrliczSpec& spec, double sigma, std::size_t n);

// psi*^{-1}(info) with info = I(T;Z) or H(T).
BoundReport soft_bound(const OrliczSpec& spec, double info,
                       InfoSource source = InfoSource::MutualInformation);

// sigma * sum_i inf_{a_i} ||P(T=i|Z) - a_i||^A_{psi*}, nested 1-D searches.
// Requires an Orlicz spec with b = inf.
BoundReport thm1_conditional_bound(const FiniteJointInstance& joint,
                                   const OrliczSpec& spec, double sigma);

// sigma * inf_{t>0, a in [0,1]^n} (1/t)(n + sum_i P_i psi*(t|1-a_i|)
//   + (1-P_i) psi*(t|a_i|)). Requires b = inf.
BoundReport thm1_marginal_bound(const SelectionMarginal& m, const OrliczSpec& spec,
                                double sigma);

// sigma n^{1/p} (sum_i min_a E|P(T=i|Z) - a|^q)^{1/q}, q = p/(p-1), p > 1.
BoundReport pnorm_conditional_bound(const FiniteJointInstance& joint, double p,
                                    double sigma);

// sigma n^{1/p} H(T;q) for p > 1; for p = 1: 0 on deterministic T, else sigma n / 2.
BoundReport pnorm_marginal_bound(const SelectionMarginal& m, double p, double sigma);

}  // namespace maxineq
