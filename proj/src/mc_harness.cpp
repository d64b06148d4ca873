#include "maxineq/mc_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "maxineq/selection_entropy.hpp"

namespace maxineq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::size_t kBlock = 4096;

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-derived substream: one root seed, every (tag, index) pair gets
// an independent deterministic stream, so parallel replication cannot
// change the draws.
struct Stream {
  std::uint64_t state;
  Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
      : state(mix64(mix64(seed ^ (tag * 0xA24BAED4963EE407ULL)) ^
                    (index * 0x9FB21C651E98DF25ULL))) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double u01() {  // (0, 1]
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }
  double gaussian() {
    double u1 = u01(), u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
};

constexpr std::uint64_t kTagMain = 0;
constexpr std::uint64_t kTagConditional = 1;

std::vector<std::vector<double>> correlation_cholesky(std::size_t n, double rho) {
  std::vector<std::vector<double>> a(n, std::vector<double>(n, rho));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0)
          throw std::domain_error("correlated gaussian: correlation matrix not PD");
        l[i][j] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

struct LawSampler {
  const GeneratorConfig& cfg;
  std::vector<std::vector<double>> chol;  // CorrelatedGaussian only
  explicit LawSampler(const GeneratorConfig& c) : cfg(c) {
    if (cfg.z_law == ZLaw::CorrelatedGaussian)
      chol = correlation_cholesky(cfg.n, cfg.law_param);
  }
  void draw(Stream& rng, std::vector<double>& z) const {
    z.resize(cfg.n);
    switch (cfg.z_law) {
      case ZLaw::GaussianIID:
        for (auto& v : z) v = cfg.law_param * rng.gaussian();
        break;
      case ZLaw::RademacherIID:
        for (auto& v : z) v = (rng.next() & 1) ? 1.0 : -1.0;
        break;
      case ZLaw::BoundedUniform:
        for (auto& v : z) v = cfg.law_param * (2.0 * rng.u01() - 1.0);
        break;
      case ZLaw::CorrelatedGaussian: {
        std::vector<double> g(cfg.n);
        for (auto& v : g) v = rng.gaussian();
        for (std::size_t i = 0; i < cfg.n; ++i) {
          double s = 0.0;
          for (std::size_t j = 0; j <= i; ++j) s += chol[i][j] * g[j];
          z[i] = s;
        }
        break;
      }
    }
  }
};

void kernel_row(const GeneratorConfig& cfg, const std::vector<double>& z,
                std::vector<double>& row) {
  row.assign(cfg.n, 0.0);
  switch (cfg.selection) {
    case SelectionRule::Argmax: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < cfg.n; ++i)
        if (z[i] > z[best]) best = i;  // ties keep the lowest index
      row[best] = 1.0;
      break;
    }
    case SelectionRule::Deterministic:
      row[cfg.fixed_index] = 1.0;
      break;
    case SelectionRule::UniformRandom:
      row.assign(cfg.n, 1.0 / static_cast<double>(cfg.n));
      break;
    case SelectionRule::Softmax: {
      double mx = *std::max_element(z.begin(), z.end());
      double total = 0.0;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        row[i] = std::exp(cfg.softmax_beta * (z[i] - mx));
        total += row[i];
      }
      for (auto& v : row) v /= total;
      break;
    }
  }
}

std::size_t draw_index(const GeneratorConfig& cfg, const std::vector<double>& row,
                       Stream& rng) {
  if (cfg.selection == SelectionRule::Argmax || cfg.selection == SelectionRule::Deterministic) {
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] == 1.0) return i;
  }
  double u = rng.u01();
  double acc = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    acc += row[i];
    if (u <= acc) return i;
  }
  return row.size() - 1;
}

struct Acc {
  double sum = 0.0;
  double sumsq = 0.0;
};

Acc pairwise_reduce(const std::vector<Acc>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  Acc a = pairwise_reduce(blocks, lo, mid);
  Acc b = pairwise_reduce(blocks, mid, hi);
  return {a.sum + b.sum, a.sumsq + b.sumsq};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* law_name(ZLaw law) {
  switch (law) {
    case ZLaw::GaussianIID: return "gaussian";
    case ZLaw::RademacherIID: return "rademacher";
    case ZLaw::BoundedUniform: return "uniform";
    case ZLaw::CorrelatedGaussian: return "correlated-gaussian";
  }
  return "?";
}

const char* selection_name(SelectionRule s) {
  switch (s) {
    case SelectionRule::Argmax: return "argmax";
    case SelectionRule::Deterministic: return "deterministic";
    case SelectionRule::UniformRandom: return "uniform";
    case SelectionRule::Softmax: return "softmax";
  }
  return "?";
}

}  // namespace

void GeneratorConfig::validate() const {
  if (n < 1) throw std::domain_error("GeneratorConfig: n must be >= 1");
  if (replicates < 1) throw std::domain_error("GeneratorConfig: replicates must be >= 1");
  switch (z_law) {
    case ZLaw::GaussianIID:
    case ZLaw::BoundedUniform:
      if (!(law_param > 0.0))
        throw std::domain_error("GeneratorConfig: scale parameter must be > 0");
      break;
    case ZLaw::CorrelatedGaussian:
      if (n < 2 || !(law_param > -1.0 / (static_cast<double>(n) - 1.0)) || !(law_param < 1.0))
        throw std::domain_error("GeneratorConfig: correlation out of range");
      break;
    case ZLaw::RademacherIID:
      break;
  }
  if (selection == SelectionRule::Deterministic && fixed_index >= n)
    throw std::domain_error("GeneratorConfig: fixed index out of range");
  if (selection == SelectionRule::Softmax && !(softmax_beta >= 0.0))
    throw std::domain_error("GeneratorConfig: softmax beta must be >= 0");
}

std::string GeneratorConfig::digest() const {
  std::ostringstream os;
  os << "n=" << n << ";law=" << law_name(z_law) << ";param=" << format_double(law_param)
     << ";sel=" << selection_name(selection) << ";idx=" << fixed_index
     << ";beta=" << format_double(softmax_beta) << ";rep=" << replicates
     << ";seed=" << seed;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

EstimateWithCI estimate_selected_mean(const GeneratorConfig& cfg, unsigned threads) {
  cfg.validate();
  if (threads < 1) threads = 1;
  LawSampler sampler(cfg);
  const std::size_t R = cfg.replicates;
  const std::size_t nblocks = (R + kBlock - 1) / kBlock;
  std::vector<Acc> blocks(nblocks);

  auto run_block = [&](std::size_t b) {
    Acc acc;
    std::vector<double> z, row;
    std::size_t lo = b * kBlock, hi = std::min(R, lo + kBlock);
    for (std::size_t k = lo; k < hi; ++k) {
      Stream rng(cfg.seed, kTagMain, k);
      sampler.draw(rng, z);
      kernel_row(cfg, z, row);
      double x = z[draw_index(cfg, row, rng)];
      acc.sum += x;
      acc.sumsq += x * x;
    }
    blocks[b] = acc;
  };

  if (threads == 1 || nblocks == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < nblocks; b += threads) run_block(b);
      });
    for (auto& t : pool) t.join();
  }

  Acc total = pairwise_reduce(blocks, 0, nblocks);
  double mean = total.sum / static_cast<double>(R);
  double se = 0.0;
  if (R > 1) {
    double var = (total.sumsq - static_cast<double>(R) * mean * mean) /
                 (static_cast<double>(R) - 1.0);
    se = std::sqrt(std::max(0.0, var) / static_cast<double>(R));
  }
  return {mean, se, R};
}

EmpiricalRV empirical_conditional_rv(const GeneratorConfig& cfg, std::size_t i,
                                     std::size_t max_draws) {
  cfg.validate();
  if (i >= cfg.n) throw std::domain_error("empirical_conditional_rv: index out of range");
  LawSampler sampler(cfg);
  std::size_t draws = std::min(cfg.replicates, max_draws);
  std::vector<double> values;
  values.reserve(draws);
  std::vector<double> z, row;
  for (std::size_t k = 0; k < draws; ++k) {
    Stream rng(cfg.seed, kTagConditional, k);
    sampler.draw(rng, z);
    kernel_row(cfg, z, row);
    values.push_back(row[i]);
  }
  return EmpiricalRV::from_values(values);
}

SelectionMarginal estimate_selection_marginal(const GeneratorConfig& cfg,
                                              std::size_t max_draws) {
  cfg.validate();
  LawSampler sampler(cfg);
  std::size_t draws = std::min(cfg.replicates, max_draws);
  std::vector<double> p(cfg.n, 0.0);
  std::vector<double> z, row;
  for (std::size_t k = 0; k < draws; ++k) {
    Stream rng(cfg.seed, kTagConditional, k);
    sampler.draw(rng, z);
    kernel_row(cfg, z, row);
    for (std::size_t j = 0; j < cfg.n; ++j) p[j] += row[j];
  }
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return SelectionMarginal(std::move(p));
}

SelectionMarginal empirical_selection_frequency(const GeneratorConfig& cfg) {
  cfg.validate();
  LawSampler sampler(cfg);
  std::vector<double> counts(cfg.n, 0.0);
  std::vector<double> z, row;
  for (std::size_t k = 0; k < cfg.replicates; ++k) {
    Stream rng(cfg.seed, kTagMain, k);
    sampler.draw(rng, z);
    kernel_row(cfg, z, row);
    counts[draw_index(cfg, row, rng)] += 1.0;
  }
  for (double& v : counts) v /= static_cast<double>(cfg.replicates);
  double total = 0.0;
  for (double v : counts) total += v;
  for (double& v : counts) v /= total;
  return SelectionMarginal(std::move(counts));
}

double coordinate_sigma(const GeneratorConfig& cfg, const OrliczSpec& spec) {
  cfg.validate();
  switch (cfg.z_law) {
    case ZLaw::GaussianIID:
    case ZLaw::CorrelatedGaussian: {
      double sd = cfg.z_law == ZLaw::GaussianIID ? cfg.law_param : 1.0;
      if (spec.family() == OrliczFamily::SubGaussianQuadratic) return sd;
      if (spec.family() == OrliczFamily::Power && spec.exponent() == 2.0) return sd;
      // generic: Luxemburg norm of a fine discretization of the law
      const int cells = 10000;
      const double span = 8.0 * sd;
      std::vector<Atom> atoms;
      atoms.reserve(cells);
      double wsum = 0.0;
      for (int c = 0; c < cells; ++c) {
        double a = -span + 2.0 * span * c / cells;
        double b = -span + 2.0 * span * (c + 1) / cells;
        double w = 0.5 * (std::erf(b / (sd * std::sqrt(2.0))) -
                          std::erf(a / (sd * std::sqrt(2.0))));
        if (w > 0.0) {
          atoms.push_back({0.5 * (a + b), w});
          wsum += w;
        }
      }
      for (auto& at : atoms) at.weight /= wsum;
      return luxemburg_norm(EmpiricalRV(std::move(atoms)), spec);
    }
    case ZLaw::RademacherIID:
      return luxemburg_norm(EmpiricalRV({{-1.0, 0.5}, {1.0, 0.5}}), spec);
    case ZLaw::BoundedUniform: {
      const int cells = 10000;
      double h = cfg.law_param;
      std::vector<Atom> atoms;
      atoms.reserve(cells);
      for (int c = 0; c < cells; ++c)
        atoms.push_back({-h + 2.0 * h * (c + 0.5) / cells, 1.0 / cells});
      double wsum = 0.0;
      for (auto& at : atoms) wsum += at.weight;
      for (auto& at : atoms) at.weight /= wsum;
      return luxemburg_norm(EmpiricalRV(std::move(atoms)), spec);
    }
  }
  throw std::logic_error("coordinate_sigma: unknown law");
}

std::optional<FiniteJointInstance> exact_joint(const GeneratorConfig& cfg) {
  cfg.validate();
  if (cfg.z_law != ZLaw::RademacherIID || cfg.n > 12) return std::nullopt;
  FiniteJointInstance joint;
  joint.n = cfg.n;
  std::size_t states = std::size_t{1} << cfg.n;
  double w = 1.0 / static_cast<double>(states);
  std::vector<double> row;
  for (std::size_t s = 0; s < states; ++s) {
    std::vector<double> z(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) z[i] = (s >> i) & 1 ? 1.0 : -1.0;
    kernel_row(cfg, z, row);
    joint.z_support.push_back(z);
    joint.z_probs.push_back(w);
    joint.kernel.push_back(row);
  }
  joint.validate();
  return joint;
}

VerificationReport verify_bounds(const GeneratorConfig& cfg, const OrliczSpec& spec,
                                 unsigned threads) {
  cfg.validate();
  VerificationReport report;
  report.estimate = estimate_selected_mean(cfg, threads);
  const double est = report.estimate.point;
  const double slack = 3.0 * report.estimate.std_error;
  const std::string dig = cfg.digest();

  auto add = [&](const BoundReport& b, bool absolute) {
    double lhs = absolute ? std::abs(est) : est;
    bool passed = lhs - slack <= b.value.as_double() + 1e-12;
    report.rows.push_back({bound_kind_name(b.kind), b.value.as_double(), est,
                           report.estimate.std_error, passed, cfg.seed, dig});
    report.all_passed = report.all_passed && passed;
  };

  SelectionMarginal marg = estimate_selection_marginal(cfg);

  // MGF-side bounds: the quadratic envelope dominates the log-MGF of every
  // built-in law (with its scale chosen as the sub-Gaussian parameter).
  if (spec.family() == OrliczFamily::SubGaussianQuadratic) {
    add(mgf_bound(spec, cfg.n), false);
    add(soft_bound(spec, shannon_entropy(marg), InfoSource::Entropy), false);
    if (auto joint = exact_joint(cfg))
      add(soft_bound(spec, mutual_information(*joint), InfoSource::MutualInformation),
          false);
  }

  double sigma = coordinate_sigma(cfg, spec);
  if (sigma > 0.0 && spec.domain_bound() == std::numeric_limits<double>::infinity()) {
    add(orlicz_bound(spec, sigma, cfg.n), true);
    add(thm1_marginal_bound(marg, spec, sigma), true);

    // plug-in joint from sampled Z states with the closed-form kernel
    LawSampler sampler(cfg);
    std::size_t draws = std::min<std::size_t>(cfg.replicates, 2000);
    FiniteJointInstance plug;
    plug.n = cfg.n;
    std::vector<double> z, row;
    for (std::size_t k = 0; k < draws; ++k) {
      Stream rng(cfg.seed, kTagConditional, k);
      sampler.draw(rng, z);
      kernel_row(cfg, z, row);
      plug.z_support.push_back(z);
      plug.z_probs.push_back(1.0 / static_cast<double>(draws));
      plug.kernel.push_back(row);
    }
    double total = 0.0;
    for (double v : plug.z_probs) total += v;
    for (double& v : plug.z_probs) v /= total;
    add(thm1_conditional_bound(plug, spec, sigma), true);

    if (spec.family() == OrliczFamily::Power)
      add(pnorm_marginal_bound(marg, spec.exponent(), sigma), true);
  }
  return report;
}

std::string csv_header() {
  return "bound_name,bound_value,estimate,std_error,passed,seed,config_digest";
}

std::string to_csv_row(const BoundCheckRow& row) {
  std::ostringstream os;
  os << row.bound_name << "," << format_double(row.bound_value) << ","
     << format_double(row.estimate) << "," << format_double(row.std_error) << ","
     << (row.passed ? 1 : 0) << "," << row.seed << "," << row.config_digest;
  return os.str();
}

std::string to_csv(const VerificationReport& report) {
  std::string out = csv_header() + "\n";
  for (const auto& row : report.rows) out += to_csv_row(row) + "\n";
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace maxineq
