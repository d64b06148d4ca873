#include "maxineq/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "maxineq/optimize.hpp"

namespace maxineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOracleTLo = 1e-6;
constexpr double kOracleTHi = 1e6;

void check_resolution(const FiniteJointInstance* joint, std::size_t n, int resolution) {
  if (joint && joint->n > 4)
    throw std::runtime_error("grid oracle: refused, n exceeds the oracle cap of 4");
  if (!joint && n > 4)
    throw std::runtime_error("grid oracle: refused, n exceeds the oracle cap of 4");
  if (resolution < 3 || resolution > 2001)
    throw std::runtime_error("grid oracle: resolution must be in [3, 2001]");
}

EmpiricalRV merged_rv(const std::vector<std::pair<double, double>>& raw) {
  std::map<double, double> merged;
  for (const auto& [v, w] : raw)
    if (w > 0.0) merged[v] += w;
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [v, w] : merged) atoms.push_back({v, w});
  return EmpiricalRV(std::move(atoms));
}

}  // namespace

void FiniteJointInstance::validate() const {
  if (n == 0) throw std::domain_error("instance: n must be >= 1");
  std::size_t m = z_support.size();
  if (m == 0) throw std::domain_error("instance: needs at least one support state");
  if (m * n > 1000000) throw std::domain_error("instance: m*n exceeds the oracle scale cap 1e6");
  if (z_probs.size() != m || kernel.size() != m)
    throw std::domain_error("instance: z_probs/kernel size mismatch");
  double total = 0.0;
  for (double p : z_probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("instance: z_probs must lie in [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("instance: z_probs must sum to 1 within 1e-12");
  for (std::size_t k = 0; k < m; ++k) {
    if (z_support[k].size() != n || kernel[k].size() != n)
      throw std::domain_error("instance: row width mismatch");
    double row = 0.0;
    for (double p : kernel[k]) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("instance: kernel entries must lie in [0, 1]");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-12)
      throw std::domain_error("instance: kernel rows must sum to 1 within 1e-12");
  }
}

FiniteJointInstance center_coordinates(FiniteJointInstance joint) {
  joint.validate();
  for (std::size_t i = 0; i < joint.n; ++i) {
    double mean = 0.0;
    for (std::size_t k = 0; k < joint.states(); ++k)
      mean += joint.z_probs[k] * joint.z_support[k][i];
    for (std::size_t k = 0; k < joint.states(); ++k) joint.z_support[k][i] -= mean;
  }
  return joint;
}

double exact_selected_mean(const FiniteJointInstance& joint) {
  double s = 0.0;
  for (std::size_t k = 0; k < joint.states(); ++k)
    for (std::size_t i = 0; i < joint.n; ++i)
      s += joint.z_probs[k] * joint.kernel[k][i] * joint.z_support[k][i];
  return s;
}

double exact_max_mean(const FiniteJointInstance& joint) {
  double s = 0.0;
  for (std::size_t k = 0; k < joint.states(); ++k)
    s += joint.z_probs[k] *
         *std::max_element(joint.z_support[k].begin(), joint.z_support[k].end());
  return s;
}

SelectionMarginal selection_marginal(const FiniteJointInstance& joint) {
  std::vector<double> p(joint.n, 0.0);
  for (std::size_t k = 0; k < joint.states(); ++k)
    for (std::size_t i = 0; i < joint.n; ++i)
      p[i] += joint.z_probs[k] * joint.kernel[k][i];
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return SelectionMarginal(std::move(p));
}

EmpiricalRV conditional_probability_rv(const FiniteJointInstance& joint, std::size_t i) {
  if (i >= joint.n) throw std::domain_error("conditional_probability_rv: index out of range");
  std::vector<std::pair<double, double>> raw;
  raw.reserve(joint.states());
  for (std::size_t k = 0; k < joint.states(); ++k)
    raw.emplace_back(joint.kernel[k][i], joint.z_probs[k]);
  return merged_rv(raw);
}

double coordinate_sigma(const FiniteJointInstance& joint, const OrliczSpec& spec) {
  double sigma = 0.0;
  for (std::size_t i = 0; i < joint.n; ++i) {
    std::vector<std::pair<double, double>> raw;
    for (std::size_t k = 0; k < joint.states(); ++k)
      raw.emplace_back(joint.z_support[k][i], joint.z_probs[k]);
    sigma = std::max(sigma, luxemburg_norm(merged_rv(raw), spec));
  }
  return sigma;
}

double grid_minimize_bound(const FiniteJointInstance& joint, const OrliczSpec& spec,
                           double sigma, int resolution) {
  check_resolution(&joint, joint.n, resolution);
  auto psi_star = conjugate_fn(spec);
  double total = 0.0;
  for (std::size_t i = 0; i < joint.n; ++i) {
    EmpiricalRV cond = conditional_probability_rv(joint, i);
    // dense (a, log t) grid, refined around the incumbent
    double alo = 0.0, ahi = 1.0;
    double ulo = std::log(kOracleTLo), uhi = std::log(kOracleTHi);
    double best = kInf;
    for (int pass = 0; pass < 3; ++pass) {
      double astep = (ahi - alo) / (resolution - 1);
      double ustep = (uhi - ulo) / (resolution - 1);
      int best_ia = 0, best_iu = 0;
      for (int ia = 0; ia < resolution; ++ia) {
        double a = alo + astep * ia;
        for (int iu = 0; iu < resolution; ++iu) {
          double t = std::exp(ulo + ustep * iu);
          double s = 1.0;
          for (const auto& atom : cond.atoms()) {
            double v = psi_star(t * std::abs(atom.value - a));
            if (std::isinf(v)) {
              s = kInf;
              break;
            }
            s += atom.weight * v;
          }
          double obj = s / t;
          if (obj < best) {
            best = obj;
            best_ia = ia;
            best_iu = iu;
          }
        }
      }
      double na_lo = std::max(0.0, alo + astep * (best_ia - 2));
      double na_hi = std::min(1.0, alo + astep * (best_ia + 2));
      double nu_lo = std::max(std::log(kOracleTLo), ulo + ustep * (best_iu - 2));
      double nu_hi = std::min(std::log(kOracleTHi), ulo + ustep * (best_iu + 2));
      alo = na_lo;
      ahi = na_hi;
      ulo = nu_lo;
      uhi = nu_hi;
    }
    total += best;
  }
  return sigma * total;
}

double grid_minimize_bound(const SelectionMarginal& m, const OrliczSpec& spec,
                           double sigma, int resolution) {
  check_resolution(nullptr, m.size(), resolution);
  auto psi_star = conjugate_fn(spec);
  const std::size_t n = m.size();
  auto objective_at = [&](double t) {
    double s = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      double p = m.probs()[i];
      auto inner = [&](double a) {
        double va = psi_star(t * std::abs(1.0 - a));
        double vb = psi_star(t * std::abs(a));
        double term = 0.0;
        if (p > 0.0) term += p * va;        // 0 * inf contributes nothing
        if (p < 1.0) term += (1.0 - p) * vb;
        return term;
      };
      double term = opt::grid_min_1d(inner, 0.0, 1.0, resolution, 2).value;
      if (std::isinf(term)) return kInf;
      s += term;
    }
    return s / t;
  };
  double ulo = std::log(kOracleTLo), uhi = std::log(kOracleTHi);
  double best = kInf;
  for (int pass = 0; pass < 3; ++pass) {
    double ustep = (uhi - ulo) / (resolution - 1);
    int best_iu = 0;
    for (int iu = 0; iu < resolution; ++iu) {
      double obj = objective_at(std::exp(ulo + ustep * iu));
      if (obj < best) {
        best = obj;
        best_iu = iu;
      }
    }
    double nu_lo = std::max(std::log(kOracleTLo), ulo + ustep * (best_iu - 2));
    double nu_hi = std::min(std::log(kOracleTHi), ulo + ustep * (best_iu + 2));
    ulo = nu_lo;
    uhi = nu_hi;
  }
  return sigma * best;
}

double grid_pnorm_conditional(const FiniteJointInstance& joint, double p,
                              double sigma, int resolution) {
  check_resolution(&joint, joint.n, resolution);
  if (!(p > 1.0)) throw std::domain_error("grid_pnorm_conditional: p must be > 1");
  double q = p / (p - 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < joint.n; ++i) {
    EmpiricalRV cond = conditional_probability_rv(joint, i);
    auto moment = [&](double a) {
      double s = 0.0;
      for (const auto& atom : cond.atoms())
        s += atom.weight * std::pow(std::abs(atom.value - a), q);
      return s;
    };
    sum += opt::grid_min_1d(moment, 0.0, 1.0, resolution, 3).value;
  }
  return sigma * std::pow(static_cast<double>(joint.n), 1.0 / p) * std::pow(sum, 1.0 / q);
}

double grid_pnorm_marginal(const SelectionMarginal& m, double p, double sigma,
                           int resolution) {
  check_resolution(nullptr, m.size(), resolution);
  if (!(p > 1.0)) throw std::domain_error("grid_pnorm_marginal: p must be > 1");
  double q = p / (p - 1.0);
  double sum = 0.0;
  for (double prob : m.probs()) {
    auto objective = [&](double a) {
      return prob * std::pow(std::abs(1.0 - a), q) +
             (1.0 - prob) * std::pow(std::abs(a), q);
    };
    sum += opt::grid_min_1d(objective, 0.0, 1.0, resolution, 3).value;
  }
  return sigma * std::pow(static_cast<double>(m.size()), 1.0 / p) * std::pow(sum, 1.0 / q);
}

namespace {

struct ParseState {
  std::size_t n = 0, m = 0;
  bool have_n = false, have_m = false;
  std::vector<std::vector<double>> z, k;
  std::vector<double> p;
  bool have_p = false;
};

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "instance parse error at line " << line << ": " << msg;
  throw std::runtime_error(os.str());
}

std::vector<double> parse_row(std::istringstream& is, int line) {
  std::vector<double> row;
  double v;
  while (is >> v) row.push_back(v);
  if (!is.eof()) parse_fail(line, "non-numeric token");
  if (row.empty()) parse_fail(line, "empty row");
  return row;
}

// accepts small hand-typed normalization drift, renormalizes it away
void normalize_checked(std::vector<double>& row, int line, const char* what) {
  double total = 0.0;
  for (double v : row) {
    if (!(v >= 0.0)) parse_fail(line, std::string(what) + " entries must be >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    parse_fail(line, std::string(what) + " does not sum to 1 (got " + std::to_string(total) + ")");
  for (double& v : row) v /= total;
}

}  // namespace

FiniteJointInstance parse_instance(std::istream& in) {
  ParseState st;
  std::string line;
  int lineno = 0;
  std::vector<int> z_lines, k_lines;
  int p_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string tag;
    if (!(is >> tag)) continue;
    if (tag == "n") {
      long v;
      if (!(is >> v) || v < 1) parse_fail(lineno, "n must be a positive integer");
      st.n = static_cast<std::size_t>(v);
      st.have_n = true;
    } else if (tag == "m") {
      long v;
      if (!(is >> v) || v < 1) parse_fail(lineno, "m must be a positive integer");
      st.m = static_cast<std::size_t>(v);
      st.have_m = true;
    } else if (tag == "z") {
      st.z.push_back(parse_row(is, lineno));
      z_lines.push_back(lineno);
    } else if (tag == "p") {
      if (st.have_p) parse_fail(lineno, "duplicate p row");
      st.p = parse_row(is, lineno);
      st.have_p = true;
      p_line = lineno;
    } else if (tag == "k") {
      st.k.push_back(parse_row(is, lineno));
      k_lines.push_back(lineno);
    } else {
      parse_fail(lineno, "unknown tag '" + tag + "'");
    }
  }
  if (!st.have_n) parse_fail(lineno, "missing 'n' declaration");
  if (!st.have_m) parse_fail(lineno, "missing 'm' declaration");
  if (!st.have_p) parse_fail(lineno, "missing 'p' row");
  if (st.z.size() != st.m) parse_fail(lineno, "expected m 'z' rows");
  if (st.k.size() != st.m) parse_fail(lineno, "expected m 'k' rows");
  if (st.p.size() != st.m) parse_fail(p_line, "p row must have m entries");
  for (std::size_t r = 0; r < st.m; ++r) {
    if (st.z[r].size() != st.n) parse_fail(z_lines[r], "z row must have n entries");
    if (st.k[r].size() != st.n) parse_fail(k_lines[r], "k row must have n entries");
    normalize_checked(st.k[r], k_lines[r], "kernel row");
  }
  normalize_checked(st.p, p_line, "p row");
  FiniteJointInstance joint;
  joint.n = st.n;
  joint.z_support = std::move(st.z);
  joint.z_probs = std::move(st.p);
  joint.kernel = std::move(st.k);
  joint.validate();
  return joint;
}

FiniteJointInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(in);
}

std::string format_instance(const FiniteJointInstance& joint) {
  std::ostringstream os;
  os.precision(17);
  os << "n " << joint.n << "\n";
  os << "m " << joint.states() << "\n";
  for (const auto& row : joint.z_support) {
    os << "z";
    for (double v : row) os << " " << v;
    os << "\n";
  }
  os << "p";
  for (double v : joint.z_probs) os << " " << v;
  os << "\n";
  for (const auto& row : joint.kernel) {
    os << "k";
    for (double v : row) os << " " << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace maxineq
