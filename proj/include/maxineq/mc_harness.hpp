#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxineq/bound_engine.hpp"
#include "maxineq/discrete_oracle.hpp"
#include "maxineq/orlicz.hpp"
#include "maxineq/rv_norms.hpp"

namespace maxineq {

enum class ZLaw { GaussianIID, RademacherIID, BoundedUniform, CorrelatedGaussian };
enum class SelectionRule { Argmax, Deterministic, UniformRandom, Softmax };

struct GeneratorConfig {
  std::size_t n = 2;
  ZLaw z_law = ZLaw::GaussianIID;
  double law_param = 1.0;  // sd, half_width or correlation rho
  SelectionRule selection = SelectionRule::Argmax;
  std::size_t fixed_index = 0;   // Deterministic
  double softmax_beta = 1.0;     // Softmax, >= 0
  std::size_t replicates = 100000;
  std::uint64_t seed = 1;

  void validate() const;
  std::string digest() const;  // stable fingerprint of every field
};

struct EstimateWithCI {
  double point = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
};

// Sample mean of Z_T over cfg.replicates draws, with its standard error.
// Bitwise deterministic given (cfg, seed) for any thread count.
EstimateWithCI estimate_selected_mean(const GeneratorConfig& cfg, unsigned threads = 1);

// Law of P(T = i | Z) under sampled Z, from the closed-form kernel of the
// selection rule (never from observed T draws). max_draws caps the sample
// so the nested Amemiya searches stay cheap.
EmpiricalRV empirical_conditional_rv(const GeneratorConfig& cfg, std::size_t i,
                                     std::size_t max_draws = 2000);

// Mean of the closed-form kernel over sampled Z: a plug-in P_T.
SelectionMarginal estimate_selection_marginal(const GeneratorConfig& cfg,
                                              std::size_t max_draws = 100000);

// Frequencies of actually drawn T values (for calibration checks).
SelectionMarginal empirical_selection_frequency(const GeneratorConfig& cfg);

// sigma = ||Z_i||_psi for the configured law, analytic where known,
// discretized Luxemburg otherwise.
double coordinate_sigma(const GeneratorConfig& cfg, const OrliczSpec& spec);

// Exact finite joint, available for Rademacher coordinates with n <= 12.
std::optional<FiniteJointInstance> exact_joint(const GeneratorConfig& cfg);

struct BoundCheckRow {
  std::string bound_name;
  double bound_value;
  double estimate;
  double std_error;
  bool passed;
  std::uint64_t seed;
  std::string config_digest;
};

struct VerificationReport {
  EstimateWithCI estimate;
  std::vector<BoundCheckRow> rows;
  bool all_passed = true;
};

// Computes every applicable bound and checks the estimate against each
// with a 3-standard-error allowance: signed estimate for the MGF-side
// bounds, absolute value for the Orlicz-norm-side bounds.
VerificationReport verify_bounds(const GeneratorConfig& cfg, const OrliczSpec& spec,
                                 unsigned threads = 1);

std::string csv_header();
std::string to_csv_row(const BoundCheckRow& row);
std::string to_csv(const VerificationReport& report);

// Minimal CSV reader for the emitted tables (no quoting in our columns).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace maxineq
