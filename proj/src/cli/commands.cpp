#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "zkent/cli.hpp"

namespace zkent {

namespace {

using report::json;

// Bad flags or flag combinations; exit code 2 like a parse error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string path;
  bool json = false;
  bool bits = false;
  bool ci = false;

  std::string nu;
  double tol_grouping = SpectralTolerances{}.grouping;
  double tol_invariance = SpectralTolerances{}.invariance;
  std::optional<double> ball_dim;
  std::string sense = "max";

  std::string oracle = "block";
  std::optional<std::size_t> n;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  double eps = 0.01;
  std::optional<double> tolerance;
  unsigned workers = 1;
};

struct Input {
  std::string bytes;
  FamilySpec spec;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

std::string fmt_subset(const std::vector<std::size_t>& blocks) {
  std::string s = "{";
  for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? "," : "") + std::to_string(blocks[i] + 1);
  return s + "}";
}

std::string fmt_vector(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

bool ci_from_environment() {
  const char* v = std::getenv("CI");
  if (!v) return false;
  const std::string s(v);
  return !(s.empty() || s == "0" || s == "false" || s == "FALSE");
}

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError(path + ": read error");
  Input input;
  input.bytes = buf.str();
  input.spec = parse_family_text(input.bytes, path);
  return input;
}

Distribution resolve_nu(const Options& opt, const FamilySpec& spec, std::size_t k) {
  std::vector<double> probs;
  if (!opt.nu.empty()) {
    std::string text = opt.nu;
    for (char& c : text)
      if (c == ',') c = ' ';
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
      double p = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), p);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw UsageError("--nu: '" + tok + "' is not a number");
      probs.push_back(p);
    }
  } else if (spec.distribution) {
    probs = *spec.distribution;
  } else if (k == 1) {
    probs = {1.0};
  } else {
    throw UsageError("--nu is required: the family has " + std::to_string(k) + " generators and no distribution");
  }
  return Distribution::validate(std::move(probs), k);
}

class Printer {
 public:
  Printer(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  // Entropy-like quantity in the requested human unit.
  std::string h(double nats) const { return fmt(opt_.bits ? nats / std::numbers::ln2 : nats) + unit(); }
  std::string unit() const { return opt_.bits ? " bits" : " nats"; }
  std::ostream& line() { return out_; }

 private:
  const Options& opt_;
  std::ostream& out_;
};

struct Outcome {
  json parameters = json::object();
  json results = json::object();
  std::vector<std::string> warnings;
  int exit_code = 0;
};

Outcome cmd_validate(const Options&, const Input& input, Printer& p) {
  const GeneratorFamily family = input.spec.family();
  Outcome o;
  o.results = report::family(family);
  o.results["commuting"] = true;
  if (input.spec.distribution) {
    o.results["distribution"] = report::distribution(Distribution::validate(*input.spec.distribution, family.size()));
  }
  p.line() << "valid: d=" << family.dim() << ", k=" << family.size() << ", kind=" << to_string(family.kind()) << "\n";
  for (std::size_t i = 0; i < family.size(); ++i)
    p.line() << "  " << family.generator(i).name << " = " << family.matrix(i).to_string()
             << "  det=" << family.determinant(i) << "\n";
  return o;
}

SpectralTolerances tolerances(const Options& opt) {
  return {opt.tol_grouping, opt.tol_invariance};
}

Outcome cmd_spectrum(const Options& opt, const Input& input, Printer& p) {
  const GeneratorFamily family = input.spec.family();
  const Spectrum spec = joint_spectrum(family, tolerances(opt));
  Outcome o;
  o.parameters = {{"tol_grouping", opt.tol_grouping}, {"tol_invariance", opt.tol_invariance}};
  o.results = report::spectrum(spec);
  p.line() << "block  dim  exponents";
  for (std::size_t i = 0; i < family.size(); ++i) p.line() << "  " << family.generator(i).name;
  p.line() << "\n";
  for (std::size_t j = 0; j < spec.size(); ++j) {
    char head[32];
    std::snprintf(head, sizeof head, "%5zu  %3zu ", j + 1, spec.blocks[j].dim);
    p.line() << head;
    for (double e : spec.blocks[j].exponents) p.line() << "  " << fmt(e);
    p.line() << "\n";
  }
  p.line() << "residual " << spec.residual << "\n";
  return o;
}

Outcome cmd_entropy(const Options& opt, const Input& input, Printer& p) {
  const GeneratorFamily family = input.spec.family();
  const Distribution nu = resolve_nu(opt, input.spec, family.size());
  const Spectrum spec = joint_spectrum(family);
  const EntropyReport rep = random_entropy(spec, nu);
  const double smooth = smooth_bound(family_constants(family).opnorms, family.dim(), nu);
  Outcome o;
  o.parameters = {{"nu", report::distribution(nu)}};
  o.results = report::entropy(rep);
  o.results["mixture_bound_tight"] = mixture_bound_is_tight(spec);
  o.results["sandwich"] = {{"lower", rep.value},
                           {"mixture", rep.mixture_bound},
                           {"smooth_upper", smooth},
                           {"holds", rep.value <= rep.mixture_bound + 1e-9 && rep.mixture_bound <= smooth + 1e-9}};
  p.line() << "entropy        " << p.h(rep.value) << "\n";
  p.line() << "J*             " << fmt_subset(rep.best_subset) << "\n";
  p.line() << "block terms   ";
  for (double t : rep.block_terms) p.line() << " " << p.h(t);
  p.line() << "\n";
  p.line() << "mixture bound  " << p.h(rep.mixture_bound) << "\n";
  p.line() << "smooth bound   " << p.h(smooth) << "\n";
  return o;
}

Outcome cmd_friedland(const Options&, const Input& input, Printer& p) {
  const GeneratorFamily family = input.spec.family();
  const Spectrum spec = joint_spectrum(family);
  const FriedlandReport rep = friedland_entropy(family, spec);
  Outcome o;
  o.results = report::friedland(rep, spec.size());
  if (rep.tied_subsets.size() > 1) o.warnings.push_back("several subsets attain the maximal pressure");
  p.line() << "friedland entropy  " << p.h(rep.value) << "  ["
           << (rep.equality_certified ? "equality-certified" : "upper bound") << "]\n";
  p.line() << "certification      " << rep.certification << "\n";
  p.line() << "J*                 " << fmt_subset(rep.best_subset.indices()) << "\n";
  p.line() << "nu*                " << fmt_vector(rep.maximizing_nu.probs()) << "\n";
  p.line() << "residual           " << rep.consistency_residual << "\n";
  for (const auto& c : rep.coincidence) {
    p.line() << "det(" << family.generator(c.first).name << " - " << family.generator(c.second).name
             << ") = " << c.det_difference << "  " << to_string(c.status) << "\n";
  }
  return o;
}

Outcome cmd_bounds(const Options& opt, const Input& input, Printer& p) {
  const GeneratorFamily family = input.spec.family();
  const Distribution nu = resolve_nu(opt, input.spec, family.size());
  const Spectrum spec = joint_spectrum(family);
  BoundsOptions bo;
  bo.ball_dim = opt.ball_dim;
  if (input.spec.phase_space) bo.phase_space = *input.spec.phase_space;
  const TopoBoundsReport rep = topo_bounds(family, spec, nu, bo);
  Outcome o;
  o.parameters = {{"nu", report::distribution(nu)},
                  {"ball_dim", opt.ball_dim.value_or(static_cast<double>(family.dim()))},
                  {"phase_space", std::string(phase_space_name(bo.phase_space))}};
  o.results = report::bounds(rep);
  if (!opt.ball_dim) o.warnings.push_back("ball dimension defaulted to the manifold dimension");
  auto row = [&](const char* label, const std::optional<double>& v) {
    if (v) p.line() << label << p.h(*v) << "\n";
  };
  row("lower            ", rep.lower);
  row("lipschitz upper  ", rep.lipschitz_upper);
  row("smooth upper     ", rep.smooth_upper);
  row("degree value     ", rep.degree_value);
  row("interval upper   ", rep.interval_upper);
  row("graph value      ", rep.graph_value);
  for (const auto& [quantity, rule] : rep.rules) p.line() << "  " << quantity << ": " << rule << "\n";
  return o;
}

Outcome cmd_optimize(const Options& opt, const Input& input, Printer& p) {
  if (opt.sense != "max" && opt.sense != "min") throw UsageError("--sense must be max or min");
  const GeneratorFamily family = input.spec.family();
  const Spectrum spec = joint_spectrum(family);
  const ExtremalResult res = extremal_distribution(spec, opt.sense == "max" ? Sense::maximize : Sense::minimize);
  Outcome o;
  o.parameters = {{"sense", opt.sense}};
  o.results = {{"nu", report::distribution(res.nu)}, {"value", res.value}};
  p.line() << (opt.sense == "max" ? "maximal" : "minimal") << " entropy  " << p.h(res.value) << "\n";
  p.line() << "at nu            " << fmt_vector(res.nu.probs()) << "\n";
  return o;
}

std::vector<BigInt> circle_degrees(const FamilySpec& spec, const GeneratorFamily& family) {
  if (spec.phase_space) {
    if (const auto* c = std::get_if<CircleExpandingSpace>(&*spec.phase_space)) return c->degrees;
  }
  if (family.dim() != 1) throw UsageError("circle oracle needs circle_expanding degrees or a 1x1 family");
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < family.size(); ++i) out.push_back(family.matrix(i)(0, 0));
  return out;
}

Outcome cmd_verify(const Options& opt, const Input& input, Printer& p) {
  const GeneratorFamily family = input.spec.family();
  const Distribution nu = resolve_nu(opt, input.spec, family.size());
  Outcome o;

  const bool svd = opt.oracle == "svd";
  const bool circle = opt.oracle == "circle";
  if (!svd && !circle && opt.oracle != "block") throw UsageError("--oracle must be block, svd or circle");
  const std::size_t n = opt.n.value_or(svd ? 400 : circle ? 12 : 14);
  const std::size_t samples = opt.samples.value_or(svd ? 2000 : 0);
  const double tolerance = opt.tolerance.value_or(opt.oracle == "block" ? 0.05 : 0.02);
  if (svd && samples == 0) throw UsageError("the svd oracle is Monte Carlo only; --samples must be positive");

  std::uint64_t seed = 0;
  if (samples > 0) {
    if (opt.seed) {
      seed = *opt.seed;
    } else if (opt.ci) {
      throw UsageError("--seed is required for randomized commands in CI mode");
    } else {
      o.warnings.push_back("no --seed given; using seed 0");
    }
  }

  OracleEstimate est;
  double formula = 0.0;
  const OracleMode mode{samples, seed};
  if (circle) {
    const std::vector<BigInt> degrees = circle_degrees(input.spec, family);
    est = circle_cover_oracle(degrees, nu, n, opt.eps, mode, opt.workers);
    formula = expanding_entropy(degrees, nu);
  } else {
    const Spectrum spec = joint_spectrum(family);
    formula = random_entropy(spec, nu).value;
    est = svd ? singular_value_oracle(family, nu, n, samples, seed, opt.workers)
              : block_word_oracle(spec, nu, n, mode, opt.workers);
  }
  const double gap = std::abs(est.estimate - formula);
  const bool pass = gap <= tolerance;

  o.parameters = {{"oracle", opt.oracle}, {"n", n}, {"samples", samples}, {"nu", report::distribution(nu)},
                  {"tolerance", tolerance}};
  if (samples > 0) o.parameters["seed"] = seed;
  if (circle) o.parameters["eps"] = opt.eps;
  o.results = report::oracle(est);
  o.results["formula"] = formula;
  o.results["gap"] = gap;
  o.results["pass"] = pass;
  o.exit_code = pass ? 0 : 1;

  p.line() << opt.oracle << " oracle, n=" << n << ", " << (samples ? std::to_string(samples) + " samples" : "exact")
           << "\n";
  p.line() << "estimate  " << p.h(est.estimate);
  if (est.std_error) p.line() << "  (std error " << fmt(*est.std_error) << ")";
  p.line() << "\nformula   " << p.h(formula) << "\n";
  p.line() << "gap       " << fmt(gap) << "  tolerance " << fmt(tolerance) << "  " << (pass ? "PASS" : "FAIL") << "\n";
  return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy of random commuting integer-matrix actions", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options opt;
  bool ci_flag = false;
  app.add_flag("--ci", ci_flag, "Require explicit seeds for randomized commands (also set by CI=1)");

  auto common = [&](CLI::App* sub) {
    sub->add_option("family", opt.path, "Family file (JSON or line format)")->required();
    sub->add_flag("--json", opt.json, "Emit the machine-readable report");
    sub->add_flag("--bits", opt.bits, "Show entropies in bits (human output only)");
    return sub;
  };
  auto nu_option = [&](CLI::App* sub) {
    sub->add_option("--nu", opt.nu, "Distribution on the generators, e.g. 0.7,0.3");
  };

  using Handler = Outcome (*)(const Options&, const Input&, Printer&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  commands.emplace_back(common(app.add_subcommand("validate", "Check that a family is valid and commuting")), cmd_validate);

  auto* spectrum = common(app.add_subcommand("spectrum", "Joint block spectrum"));
  spectrum->add_option("--tol-grouping", opt.tol_grouping, "Relative modulus gap separating blocks");
  spectrum->add_option("--tol-invariance", opt.tol_invariance, "Admissible invariance defect");
  commands.emplace_back(spectrum, cmd_spectrum);

  auto* entropy = common(app.add_subcommand("entropy", "Entropy of the random action"));
  nu_option(entropy);
  commands.emplace_back(entropy, cmd_entropy);

  commands.emplace_back(common(app.add_subcommand("friedland", "Friedland entropy and maximizing distribution")),
                        cmd_friedland);

  auto* bounds = common(app.add_subcommand("bounds", "Topological entropy bounds"));
  nu_option(bounds);
  bounds->add_option("--ball-dim", opt.ball_dim, "Ball dimension of the phase space (default: d)");
  commands.emplace_back(bounds, cmd_bounds);

  auto* optimize = common(app.add_subcommand("optimize", "Extremal entropy over distributions"));
  optimize->add_option("--sense", opt.sense, "max or min")->check(CLI::IsMember({"max", "min"}));
  commands.emplace_back(optimize, cmd_optimize);

  auto* verify = common(app.add_subcommand("verify", "Compare a brute-force oracle with the formula"));
  nu_option(verify);
  verify->add_option("--oracle", opt.oracle, "block, svd or circle")->check(CLI::IsMember({"block", "svd", "circle"}));
  verify->add_option("--n", opt.n, "Word length");
  verify->add_option("--samples", opt.samples, "Monte Carlo samples (0 = exact enumeration)");
  verify->add_option("--seed", opt.seed, "Monte Carlo seed");
  verify->add_option("--eps", opt.eps, "Separation scale for the circle oracle");
  verify->add_option("--tolerance", opt.tolerance, "Pass threshold on |estimate - formula|");
  verify->add_option("--workers", opt.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));
  commands.emplace_back(verify, cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  opt.ci = ci_flag || ci_from_environment();

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      const Input input = load(opt.path);
      std::ostringstream human;
      Printer printer(opt, human);
      Outcome o = handler(opt, input, printer);
      if (opt.json) {
        out << report::envelope(sub->get_name(), opt.path, digest_string(input.bytes), std::move(o.parameters),
                                std::move(o.results), o.warnings)
                   .dump(2)
            << "\n";
      } else {
        out << human.str();
        for (const auto& w : o.warnings) err << "warning: " << w << "\n";
      }
      return o.exit_code;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const NonCommutingError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace zkent
