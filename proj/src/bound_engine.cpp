#include "maxineq/bound_engine.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxineq/optimize.hpp"
#include "maxineq/rv_norms.hpp"

namespace maxineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_orlicz_unbounded(const OrliczSpec& spec, const char* what) {
  if (spec.domain_bound() != kInf) {
    std::ostringstream os;
    os << what << ": only specs with domain bound b = inf are supported";
    throw std::domain_error(os.str());
  }
}

std::string digest(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += " ";
    s += p;
  }
  return s;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::MgfClassical: return "MgfClassical";
    case BoundKind::OrliczClassical: return "OrliczClassical";
    case BoundKind::SoftMI: return "SoftMI";
    case BoundKind::SoftEntropy: return "SoftEntropy";
    case BoundKind::Thm1Conditional: return "Thm1Conditional";
    case BoundKind::Thm1Marginal: return "Thm1Marginal";
    case BoundKind::PnormConditional: return "PnormConditional";
    case BoundKind::PnormMarginalHq: return "PnormMarginalHq";
    case BoundKind::P1Special: return "P1Special";
  }
  return "?";
}

BoundReport mgf_bound(const OrliczSpec& spec, std::size_t n) {
  if (n < 1) throw std::domain_error("mgf_bound: n must be >= 1");
  double v = conjugate_inverse(spec, std::log(static_cast<double>(n)));
  return {BoundKind::MgfClassical, ExtendedReal(v), std::nullopt,
          digest({spec.describe(), "n=" + std::to_string(n)})};
}

BoundReport orlicz_bound(const OrliczSpec& spec, double sigma, std::size_t n) {
  if (n < 1) throw std::domain_error("orlicz_bound: n must be >= 1");
  if (!(sigma > 0.0)) throw std::domain_error("orlicz_bound: sigma must be > 0");
  double v = sigma * generalized_inverse(spec, static_cast<double>(n));
  return {BoundKind::OrliczClassical, ExtendedReal(v), std::nullopt,
          digest({spec.describe(), "sigma=" + num(sigma), "n=" + std::to_string(n)})};
}

BoundReport soft_bound(const OrliczSpec& spec, double info, InfoSource source) {
  if (!(info >= 0.0)) throw std::domain_error("soft_bound: info must be >= 0");
  double v = conjugate_inverse(spec, info);
  BoundKind kind =
      source == InfoSource::MutualInformation ? BoundKind::SoftMI : BoundKind::SoftEntropy;
  return {kind, ExtendedReal(v), std::nullopt,
          digest({spec.describe(), "info=" + num(info)})};
}

BoundReport thm1_conditional_bound(const FiniteJointInstance& joint,
                                   const OrliczSpec& spec, double sigma) {
  joint.validate();
  require_orlicz_unbounded(spec, "thm1_conditional_bound");
  if (!(sigma > 0.0)) throw std::domain_error("thm1_conditional_bound: sigma must be > 0");
  auto psi_star = conjugate_fn(spec);
  OptimizerState state;
  double total = 0.0;
  bool infeasible = false;
  for (std::size_t i = 0; i < joint.n; ++i) {
    EmpiricalRV cond = conditional_probability_rv(joint, i);
    AmemiyaPoint best{kInf, 0.0, false};
    auto objective = [&](double a) {
      return amemiya_norm_shifted(cond, a, psi_star).norm;
    };
    opt::ScalarMin r = opt::golden_min(objective, 0.0, 1.0, 1e-12);
    best = amemiya_norm_shifted(cond, r.x, psi_star);
    state.a.push_back(r.x);
    state.t_terms.push_back(best.t);
    state.hit_cap = state.hit_cap || best.hit_cap;
    if (std::isinf(best.norm)) infeasible = true;
    total += best.norm;
  }
  ExtendedReal value = infeasible ? ExtendedReal::infinity() : ExtendedReal(sigma * total);
  return {BoundKind::Thm1Conditional, value, state,
          digest({spec.describe(), "sigma=" + num(sigma),
                  "n=" + std::to_string(joint.n), "m=" + std::to_string(joint.states())})};
}

BoundReport thm1_marginal_bound(const SelectionMarginal& m, const OrliczSpec& spec,
                                double sigma) {
  require_orlicz_unbounded(spec, "thm1_marginal_bound");
  if (!(sigma > 0.0)) throw std::domain_error("thm1_marginal_bound: sigma must be > 0");
  auto psi_star = conjugate_fn(spec);
  const std::size_t n = m.size();

  auto inner_min = [&](double t, std::vector<double>* argmins) {
    double s = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double p = m.probs()[i];
      auto g = [&](double a) {
        double term = 0.0;
        if (p > 0.0) {
          double v = psi_star(t * std::abs(1.0 - a));
          if (std::isinf(v)) return kInf;
          term += p * v;
        }
        if (p < 1.0) {
          double v = psi_star(t * std::abs(a));
          if (std::isinf(v)) return kInf;
          term += (1.0 - p) * v;
        }
        return term;
      };
      opt::ScalarMin r = opt::golden_min(g, 0.0, 1.0, 1e-12);
      if (argmins) argmins->push_back(r.x);
      s += r.value;
    }
    return s / t;
  };

  opt::ScalarMin r = opt::minimize_positive(
      [&](double t) { return inner_min(t, nullptr); }, 1e-8, 1.0, 1e12, 1e-18);
  OptimizerState state;
  state.t = r.x;
  state.hit_cap = r.hit_cap;
  inner_min(r.x, &state.a);
  return {BoundKind::Thm1Marginal, ExtendedReal(sigma * r.value), state,
          digest({spec.describe(), "sigma=" + num(sigma), "n=" + std::to_string(n)})};
}

BoundReport pnorm_conditional_bound(const FiniteJointInstance& joint, double p,
                                    double sigma) {
  joint.validate();
  if (!(p > 1.0)) throw std::domain_error("pnorm_conditional_bound: p must be > 1");
  if (!(sigma > 0.0)) throw std::domain_error("pnorm_conditional_bound: sigma must be > 0");
  double q = p / (p - 1.0);
  OptimizerState state;
  double sum = 0.0;
  for (std::size_t i = 0; i < joint.n; ++i) {
    EmpiricalRV cond = conditional_probability_rv(joint, i);
    auto moment = [&](double a) {
      double s = 0.0;
      for (const auto& atom : cond.atoms())
        s += atom.weight * std::pow(std::abs(atom.value - a), q);
      return s;
    };
    opt::ScalarMin r = opt::golden_min(moment, 0.0, 1.0, 1e-12);
    state.a.push_back(r.x);
    sum += r.value;
  }
  double value =
      sigma * std::pow(static_cast<double>(joint.n), 1.0 / p) * std::pow(sum, 1.0 / q);
  return {BoundKind::PnormConditional, ExtendedReal(value), state,
          digest({"p=" + num(p), "sigma=" + num(sigma), "n=" + std::to_string(joint.n)})};
}

BoundReport pnorm_marginal_bound(const SelectionMarginal& m, double p, double sigma) {
  if (!(p >= 1.0)) throw std::domain_error("pnorm_marginal_bound: p must be >= 1");
  if (!(sigma > 0.0)) throw std::domain_error("pnorm_marginal_bound: sigma must be > 0");
  const double n = static_cast<double>(m.size());
  if (p == 1.0) {
    double value = m.deterministic() ? 0.0 : sigma * n / 2.0;
    return {BoundKind::P1Special, ExtendedReal(value), std::nullopt,
            digest({"p=1", "sigma=" + num(sigma), "n=" + std::to_string(m.size())})};
  }
  double q = p / (p - 1.0);
  double value = sigma * std::pow(n, 1.0 / p) * h_q(m, q);
  return {BoundKind::PnormMarginalHq, ExtendedReal(value), std::nullopt,
          digest({"p=" + num(p), "sigma=" + num(sigma), "n=" + std::to_string(m.size())})};
}

}  // namespace maxineq
