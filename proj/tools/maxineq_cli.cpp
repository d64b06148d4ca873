// maxineq command-line front end: single-value queries (conjugate, norms,
// entropy functionals), bound evaluation, Monte Carlo verification and
// parameter sweeps. Exit status is 0 iff nothing failed and no bound was
// violated.
#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxineq/bound_engine.hpp"
#include "maxineq/mc_harness.hpp"
#include "maxineq/rv_norms.hpp"
#include "maxineq/selection_entropy.hpp"

using namespace maxineq;

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

// "power:2", "subgaussian:1.5"
OrliczSpec parse_spec(const std::string& text) {
  auto colon = text.find(':');
  std::string family = text.substr(0, colon);
  double param = 2.0;
  if (colon != std::string::npos) {
    try {
      param = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--spec", "bad parameter in '" + text + "'");
    }
  }
  if (family == "power") return OrliczSpec::power(param);
  if (family == "subgaussian") return OrliczSpec::sub_gaussian_quadratic(param);
  throw CLI::ValidationError("--spec", "unknown family '" + family +
                                           "' (use power:<p> or subgaussian:<scale>)");
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "bad number '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

// hand-typed probabilities: renormalize drift up to 1e-9, reject beyond
SelectionMarginal parse_marginal(const std::string& text) {
  std::vector<double> p = parse_list(text, "--marginal");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw CLI::ValidationError("--marginal", "entries must be >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw CLI::ValidationError("--marginal",
                               "does not sum to 1 (got " + std::to_string(total) + ")");
  for (double& v : p) v /= total;
  return SelectionMarginal(std::move(p));
}

double parse_q(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfD;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--q", "expected a number or 'inf'");
  }
}

ZLaw parse_law(const std::string& text) {
  if (text == "gaussian") return ZLaw::GaussianIID;
  if (text == "rademacher") return ZLaw::RademacherIID;
  if (text == "uniform") return ZLaw::BoundedUniform;
  if (text == "correlated-gaussian") return ZLaw::CorrelatedGaussian;
  throw CLI::ValidationError("--law", "unknown law '" + text + "'");
}

SelectionRule parse_selection(const std::string& text) {
  if (text == "argmax") return SelectionRule::Argmax;
  if (text == "deterministic") return SelectionRule::Deterministic;
  if (text == "uniform") return SelectionRule::UniformRandom;
  if (text == "softmax") return SelectionRule::Softmax;
  throw CLI::ValidationError("--selection", "unknown selection rule '" + text + "'");
}

unsigned default_threads() {
  if (const char* env = std::getenv("MAXINEQ_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
  }
};

void print_value(Output& out, const std::string& name, double value, bool csv) {
  std::ostream& os = out.stream();
  os.precision(12);
  if (csv)
    os << "name,value\n" << name << "," << value << "\n";
  else
    os << value << "\n";
}

void print_bound(Output& out, const BoundReport& r, bool csv) {
  std::ostream& os = out.stream();
  os.precision(12);
  std::string value = r.value.is_infinite() ? "inf" : std::to_string(r.value.as_double());
  std::ostringstream vs;
  vs.precision(12);
  if (r.value.is_infinite())
    vs << "inf";
  else
    vs << r.value.as_double();
  if (csv) {
    os << "bound_name,bound_value,inputs\n";
    os << bound_kind_name(r.kind) << "," << vs.str() << "," << r.inputs_digest << "\n";
  } else {
    os << vs.str() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal-inequality bound calculator and Monte Carlo verifier"};
  app.set_config("--config", "", "key=value config file (flags win)");
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string output_path, format = "pretty";
  std::uint64_t seed = 1;
  unsigned threads = default_threads();
  app.add_option("--output", output_path, "write results to a file instead of stdout");
  app.add_option("--format", format, "output format: pretty or csv")
      ->check(CLI::IsMember({"pretty", "csv"}));
  app.add_option("--seed", seed, "root RNG seed for verify/sweep");
  app.add_option("--threads", threads,
                 "worker threads (default from MAXINEQ_THREADS, else 1)");

  // conjugate ------------------------------------------------------------
  auto* conj = app.add_subcommand("conjugate", "evaluate psi* or its generalized inverse");
  std::string c_spec = "power:2";
  double c_y = 1.0;
  bool c_inverse = false;
  conj->add_option("--spec", c_spec, "orlicz family, e.g. power:2 or subgaussian:1");
  conj->add_option("--y", c_y, "argument")->required();
  conj->add_flag("--inverse", c_inverse, "compute psi*^{-1}(y) instead of psi*(y)");

  // norm -----------------------------------------------------------------
  auto* norm = app.add_subcommand("norm", "Orlicz norms of a finite empirical law");
  std::string n_spec = "power:2", n_values, n_weights, n_kind = "luxemburg";
  norm->add_option("--spec", n_spec, "orlicz family");
  norm->add_option("--values", n_values, "comma-separated atom values")->required();
  norm->add_option("--weights", n_weights, "comma-separated weights (default uniform)");
  norm->add_option("--kind", n_kind, "luxemburg, amemiya, or amemiya-conjugate")
      ->check(CLI::IsMember({"luxemburg", "amemiya", "amemiya-conjugate"}));

  // entropy --------------------------------------------------------------
  auto* ent = app.add_subcommand("entropy", "entropy functionals of a selection marginal");
  std::string e_marginal, e_q = "2", e_instance;
  bool e_hq = false, e_mi = false;
  ent->add_option("--marginal", e_marginal, "comma-separated selection probabilities");
  ent->add_flag("--hq", e_hq, "compute the soft-selection functional H(T;q)");
  ent->add_option("--q", e_q, "order for --hq: a number >= 1 or 'inf'");
  ent->add_flag("--mi", e_mi, "mutual information of an instance file");
  ent->add_option("--instance", e_instance, "finite joint instance file (for --mi)");

  // bound ----------------------------------------------------------------
  auto* bnd = app.add_subcommand("bound", "evaluate one bound");
  std::string b_kind, b_spec = "power:2", b_marginal, b_instance;
  double b_sigma = 1.0, b_p = 2.0, b_info = -1.0;
  std::size_t b_n = 2;
  bnd->add_option("--kind", b_kind, "mgf, orlicz, soft-mi, soft-entropy, "
                                    "thm1-conditional, thm1-marginal, "
                                    "pnorm-conditional, pnorm-marginal")
      ->required()
      ->check(CLI::IsMember({"mgf", "orlicz", "soft-mi", "soft-entropy",
                             "thm1-conditional", "thm1-marginal", "pnorm-conditional",
                             "pnorm-marginal"}));
  bnd->add_option("--spec", b_spec, "orlicz family");
  bnd->add_option("--sigma", b_sigma, "coordinate Orlicz norm bound");
  bnd->add_option("--p", b_p, "exponent for the p-norm forms");
  bnd->add_option("--n", b_n, "number of coordinates");
  bnd->add_option("--info", b_info, "information value for the soft bounds");
  bnd->add_option("--marginal", b_marginal, "selection marginal (marginal-side bounds)");
  bnd->add_option("--instance", b_instance, "instance file (conditional-side bounds)");

  // verify ---------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "Monte Carlo check of every applicable bound");
  std::string v_law = "gaussian", v_selection = "argmax", v_spec = "subgaussian:1";
  double v_param = 1.0, v_beta = 1.0;
  std::size_t v_n = 2, v_replicates = 100000, v_index = 0;
  ver->add_option("--law", v_law, "gaussian, rademacher, uniform, correlated-gaussian");
  ver->add_option("--param", v_param, "law parameter (sd, half-width or correlation)");
  ver->add_option("--n", v_n, "number of coordinates");
  ver->add_option("--selection", v_selection, "argmax, deterministic, uniform, softmax");
  ver->add_option("--index", v_index, "fixed index for deterministic selection");
  ver->add_option("--beta", v_beta, "softmax inverse temperature");
  ver->add_option("--spec", v_spec, "orlicz family");
  ver->add_option("--replicates", v_replicates, "Monte Carlo replicates");

  // sweep ----------------------------------------------------------------
  auto* swp = app.add_subcommand("sweep", "verify over a beta x n grid, emit CSV");
  std::string s_law = "gaussian", s_spec = "subgaussian:1", s_betas = "0,1,10",
              s_ns = "2,4,8";
  double s_param = 1.0;
  std::size_t s_replicates = 100000;
  swp->add_option("--law", s_law, "gaussian, rademacher, uniform, correlated-gaussian");
  swp->add_option("--param", s_param, "law parameter");
  swp->add_option("--spec", s_spec, "orlicz family");
  swp->add_option("--betas", s_betas, "comma-separated softmax temperatures");
  swp->add_option("--ns", s_ns, "comma-separated coordinate counts");
  swp->add_option("--replicates", s_replicates, "Monte Carlo replicates per cell");

  CLI11_PARSE(app, argc, argv);

  Output out{output_path, {}};
  const bool csv = format == "csv";

  try {
    if (*conj) {
      OrliczSpec spec = parse_spec(c_spec);
      std::cerr << "# conjugate spec=" << c_spec << " y=" << c_y
                << " inverse=" << c_inverse << "\n";
      if (c_inverse) {
        print_value(out, "conjugate_inverse", conjugate_inverse(spec, c_y), csv);
      } else {
        ExtendedReal v = conjugate(spec, c_y);
        if (v.is_infinite()) {
          out.stream() << "inf\n";
        } else {
          print_value(out, "conjugate", v.as_double(), csv);
        }
      }
      return 0;
    }

    if (*norm) {
      OrliczSpec spec = parse_spec(n_spec);
      std::vector<double> values = parse_list(n_values, "--values");
      std::vector<Atom> atoms;
      if (n_weights.empty()) {
        for (double v : values)
          atoms.push_back({v, 1.0 / static_cast<double>(values.size())});
      } else {
        std::vector<double> w = parse_list(n_weights, "--weights");
        if (w.size() != values.size())
          throw CLI::ValidationError("--weights", "length mismatch with --values");
        double total = 0.0;
        for (double x : w) total += x;
        for (std::size_t i = 0; i < w.size(); ++i) atoms.push_back({values[i], w[i] / total});
      }
      EmpiricalRV rv(std::move(atoms));
      std::cerr << "# norm spec=" << n_spec << " kind=" << n_kind
                << " atoms=" << rv.atoms().size() << "\n";
      double v = 0.0;
      if (n_kind == "luxemburg")
        v = luxemburg_norm(rv, spec);
      else if (n_kind == "amemiya")
        v = amemiya_norm(rv, spec);
      else
        v = amemiya_norm(rv, conjugate_fn(spec));
      print_value(out, n_kind, v, csv);
      return 0;
    }

    if (*ent) {
      if (e_mi) {
        if (e_instance.empty())
          throw CLI::ValidationError("--instance", "required with --mi");
        FiniteJointInstance joint = parse_instance_file(e_instance);
        std::cerr << "# entropy mi instance=" << e_instance << "\n";
        print_value(out, "mutual_information", mutual_information(joint), csv);
        return 0;
      }
      if (e_marginal.empty())
        throw CLI::ValidationError("--marginal", "required unless --mi is used");
      SelectionMarginal m = parse_marginal(e_marginal);
      if (e_hq) {
        double q = parse_q(e_q);
        std::cerr << "# entropy hq q=" << e_q << " n=" << m.size() << "\n";
        print_value(out, "h_q", h_q(m, q), csv);
      } else {
        std::cerr << "# entropy shannon n=" << m.size() << "\n";
        print_value(out, "shannon_entropy", shannon_entropy(m), csv);
      }
      return 0;
    }

    if (*bnd) {
      OrliczSpec spec = parse_spec(b_spec);
      std::cerr << "# bound kind=" << b_kind << " spec=" << b_spec << " sigma=" << b_sigma
                << " p=" << b_p << " n=" << b_n << "\n";
      BoundReport report = [&] {
        if (b_kind == "mgf") return mgf_bound(spec, b_n);
        if (b_kind == "orlicz") return orlicz_bound(spec, b_sigma, b_n);
        if (b_kind == "soft-mi" || b_kind == "soft-entropy") {
          if (b_info < 0.0)
            throw CLI::ValidationError("--info", "required for the soft bounds");
          return soft_bound(spec, b_info,
                            b_kind == "soft-mi" ? InfoSource::MutualInformation
                                                : InfoSource::Entropy);
        }
        if (b_kind == "thm1-marginal" || b_kind == "pnorm-marginal") {
          if (b_marginal.empty())
            throw CLI::ValidationError("--marginal", "required for marginal bounds");
          SelectionMarginal m = parse_marginal(b_marginal);
          if (b_kind == "thm1-marginal") return thm1_marginal_bound(m, spec, b_sigma);
          return pnorm_marginal_bound(m, b_p, b_sigma);
        }
        if (b_instance.empty())
          throw CLI::ValidationError("--instance", "required for conditional bounds");
        FiniteJointInstance joint = parse_instance_file(b_instance);
        if (b_kind == "thm1-conditional")
          return thm1_conditional_bound(joint, spec, b_sigma);
        return pnorm_conditional_bound(joint, b_p, b_sigma);
      }();
      print_bound(out, report, csv);
      return 0;
    }

    GeneratorConfig cfg;
    cfg.seed = seed;
    if (*ver) {
      cfg.n = v_n;
      cfg.z_law = parse_law(v_law);
      cfg.law_param = v_param;
      cfg.selection = parse_selection(v_selection);
      cfg.fixed_index = v_index;
      cfg.softmax_beta = v_beta;
      cfg.replicates = v_replicates;
      cfg.validate();
      std::cerr << "# verify " << cfg.digest() << " law=" << v_law
                << " selection=" << v_selection << " n=" << v_n << " spec=" << v_spec
                << " replicates=" << v_replicates << " seed=" << seed
                << " threads=" << threads << "\n";
      VerificationReport rep = verify_bounds(cfg, parse_spec(v_spec), threads);
      out.stream() << to_csv(rep);
      return rep.all_passed ? 0 : 1;
    }

    if (*swp) {
      OrliczSpec spec = parse_spec(s_spec);
      std::vector<double> betas = parse_list(s_betas, "--betas");
      std::vector<double> ns = parse_list(s_ns, "--ns");
      std::cerr << "# sweep law=" << s_law << " spec=" << s_spec << " betas=" << s_betas
                << " ns=" << s_ns << " replicates=" << s_replicates << " seed=" << seed
                << " threads=" << threads << "\n";
      std::ostream& os = out.stream();
      os << "n,beta," << csv_header() << "\n";
      bool all_passed = true;
      for (double nd : ns) {
        for (double beta : betas) {
          GeneratorConfig cell;
          cell.n = static_cast<std::size_t>(nd);
          cell.z_law = parse_law(s_law);
          cell.law_param = s_param;
          cell.selection = SelectionRule::Softmax;
          cell.softmax_beta = beta;
          cell.replicates = s_replicates;
          cell.seed = seed;
          cell.validate();
          VerificationReport rep = verify_bounds(cell, spec, threads);
          all_passed = all_passed && rep.all_passed;
          for (const auto& row : rep.rows)
            os << cell.n << "," << beta << "," << to_csv_row(row) << "\n";
        }
      }
      return all_passed ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
