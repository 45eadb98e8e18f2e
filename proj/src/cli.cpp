#include "globent/cli.hpp"

#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "globent/coherent.hpp"
#include "globent/errors.hpp"
#include "globent/harness.hpp"
#include "globent/separability.hpp"
#include "globent/state_io.hpp"
#include "globent/symmetric.hpp"

namespace globent::cli {

namespace {

using nlohmann::json;

// Raised for flag combinations CLI11 cannot express; maps to kUsageError.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string fmt_real(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

std::string fmt_complex(cplx z) {
  std::ostringstream s;
  s << std::setprecision(12) << z.real() << (std::signbit(z.imag()) ? " - " : " + ")
    << std::abs(z.imag()) << "i";
  return s.str();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json factors_json(const std::vector<QubitFactor>& factors) {
  json arr = json::array();
  for (const auto& f : factors) arr.push_back({{"a", complex_json(f.a)}, {"b", complex_json(f.b)}});
  return arr;
}

QubitFactor parse_factor(const std::string& text) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  if (text == "0") return {0.0, 1.0};
  if (text == "1") return {1.0, 0.0};
  if (text == "+") return {r, r};
  if (text == "-") return {-r, r};
  if (text == "+i") return {i * r, r};
  if (text == "-i") return {-i * r, r};

  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--factors: cannot parse '" + item + "' as a number");
    }
  }
  if (parts.size() != 4) {
    throw UsageError("--factors: each factor is 0|1|+|-|+i|-i or a_re,a_im,b_re,b_im; got '" +
                     text + "'");
  }
  const cplx a{parts[0], parts[1]};
  const cplx b{parts[2], parts[3]};
  const double h = std::hypot(std::abs(a), std::abs(b));
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("--factors: zero factor '" + text + "'");
  return {a / h, b / h};
}

std::vector<QubitFactor> parse_factors(const std::string& spec) {
  std::vector<QubitFactor> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_factor(item));
  }
  if (out.empty()) throw UsageError("--factors: no factors given");
  return out;
}

struct GenArgs {
  std::string kind;
  int n_qubits = 0;
  std::optional<double> tau_re;
  std::optional<double> tau_im;
  bool tau_inf = false;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<int> k;
  std::uint64_t seed = 1;
  std::string factors;
  std::string out;
};

CoherentParam coherent_param(const GenArgs& g) {
  const bool by_tau = g.tau_re || g.tau_im;
  const bool by_angles = g.theta || g.phi;
  if (by_tau + by_angles + g.tau_inf != 1) {
    throw UsageError("coherent: give exactly one of --tau-re/--tau-im, --theta/--phi, --tau-inf");
  }
  if (g.tau_inf) return CoherentParam::infinity();
  if (by_tau) return CoherentParam::from_tau({g.tau_re.value_or(0.0), g.tau_im.value_or(0.0)});
  return CoherentParam::from_angles(g.theta.value_or(0.0), g.phi.value_or(0.0));
}

PureState generate(const GenArgs& g) {
  if (g.kind == "product") {
    auto factors = parse_factors(g.factors);
    if (g.n_qubits != 0 && g.n_qubits != static_cast<int>(factors.size())) {
      throw UsageError("product: -n does not match the number of factors");
    }
    check_qubit_count(static_cast<int>(factors.size()));
    return product_state(factors);
  }
  if (g.n_qubits == 0) throw UsageError(g.kind + ": -n/--n-qubits is required");
  check_qubit_count(g.n_qubits);
  if (g.kind == "coherent") return coherent_from_tau(g.n_qubits, coherent_param(g));
  if (g.kind == "dicke") {
    if (!g.k) throw UsageError("dicke: --k is required");
    return dicke_state(DickeIndex(g.n_qubits, *g.k));
  }
  if (g.kind == "random") return random_state(g.n_qubits, g.seed);
  if (g.kind == "random-sym") return random_symmetric(g.n_qubits, g.seed);
  if (g.kind == "random-ortho") return random_orthogonal(g.n_qubits, g.seed);
  throw UsageError("unknown state kind '" + g.kind + "'");
}

int cmd_gen(const GenArgs& g, std::ostream& out) {
  const PureState psi = generate(g);
  if (g.out.empty()) {
    out << state_to_json(psi) << '\n';
    return kOk;
  }
  write_state_file(g.out, psi);
  out << "wrote " << g.out << '\n'
      << "kind: " << g.kind << '\n'
      << "n_qubits: " << psi.n_qubits() << '\n'
      << "norm: " << fmt_real(std::sqrt(norm_sq(psi.amplitudes()))) << '\n';
  return kOk;
}

int cmd_analyze(const std::string& in, double tol, bool as_json, std::ostream& out) {
  const PureState psi = read_state_file(in);
  const auto verdict = is_product(psi, tol);
  const double q = meyer_wallach_q(psi);
  const double norm_s = project_symmetric(psi).norm_in_s;
  if (as_json) {
    json doc{{"n_qubits", psi.n_qubits()},
             {"is_product", verdict.is_product},
             {"residual", verdict.residual},
             {"meyer_wallach_q", q},
             {"norm_in_s", norm_s}};
    if (verdict.factors) doc["factors"] = factors_json(*verdict.factors);
    out << doc.dump() << '\n';
    return kOk;
  }
  out << "n_qubits: " << psi.n_qubits() << '\n'
      << "is_product: " << (verdict.is_product ? "true" : "false") << '\n'
      << "residual: " << fmt_real(verdict.residual) << '\n'
      << "meyer_wallach_q: " << fmt_real(q) << '\n'
      << "norm_in_S: " << fmt_real(norm_s) << '\n';
  if (verdict.factors) {
    int n = 1;
    for (const auto& f : *verdict.factors) {
      out << "factor " << n++ << ": a = " << fmt_complex(f.a) << ", b = " << fmt_complex(f.b)
          << '\n';
    }
  }
  return kOk;
}

int cmd_fit(const std::string& in, double tol, bool as_json, std::ostream& out,
            std::ostream& err) {
  const PureState psi = read_state_file(in);
  SymCoeffs coeffs;
  try {
    coeffs = to_sym_coeffs(psi, tol);
  } catch (const NotSymmetric& e) {
    err << "NotSymmetric: " << e.what() << '\n';
    return kCheckFailed;
  }
  const auto fit = fit_coherent(coeffs, tol);
  const auto conv = param_conversions(fit.param);
  if (as_json) {
    json doc{{"coherent", fit.is_coherent},
             {"residual", fit.residual},
             {"theta", conv.theta},
             {"phi", conv.phi},
             {"bloch", {conv.u.x, conv.u.y, conv.u.z}}};
    doc["tau"] = conv.tau ? complex_json(*conv.tau) : json("INFINITY");
    out << doc.dump() << '\n';
    return kOk;
  }
  out << (fit.is_coherent ? "coherent" : "NotCoherent") << '\n';
  out << (fit.is_coherent ? "tau: " : "best tau: ")
      << (conv.tau ? fmt_complex(*conv.tau) : std::string("INFINITY")) << '\n'
      << "theta: " << fmt_real(conv.theta) << '\n'
      << "phi: " << fmt_real(conv.phi) << '\n'
      << "bloch: (" << fmt_real(conv.u.x) << ", " << fmt_real(conv.u.y) << ", "
      << fmt_real(conv.u.z) << ")\n"
      << "residual: " << fmt_real(fit.residual) << '\n';
  return kOk;
}

int cmd_project(const std::string& in, bool ortho, const std::string& out_path, bool as_json,
                std::ostream& out, std::ostream& err) {
  const PureState psi = read_state_file(in);
  const auto proj = project_symmetric(psi);
  const double dist = distance_from_symmetric(psi);
  if (as_json) {
    json overlaps = json::array();
    for (const auto& z : proj.dicke_overlaps) overlaps.push_back(complex_json(z));
    out << json{{"n_qubits", psi.n_qubits()},
                {"norm_in_s", proj.norm_in_s},
                {"norm_in_s_perp", dist},
                {"dicke_overlaps", overlaps}}
               .dump()
        << '\n';
  } else {
    out << "n_qubits: " << psi.n_qubits() << '\n'
        << "norm_in_S: " << fmt_real(proj.norm_in_s) << '\n'
        << "norm_in_S_perp: " << fmt_real(dist) << '\n';
    for (int k = 0; k <= psi.n_qubits(); ++k) {
      out << "dicke k=" << k << " m=" << fmt_real(k - 0.5 * psi.n_qubits()) << ": "
          << fmt_complex(proj.dicke_overlaps[k]) << '\n';
    }
  }
  if (out_path.empty()) return kOk;

  Amplitudes part = proj.sym_part;
  if (ortho) {
    for (std::size_t i = 0; i < part.size(); ++i) part[i] = psi[i] - proj.sym_part[i];
  }
  if (std::sqrt(norm_sq(part)) < 1e-14) {
    err << "the requested component is zero; nothing written\n";
    return kCheckFailed;
  }
  write_state_file(out_path, PureState::from_amplitudes(psi.n_qubits(), std::move(part)));
  return kOk;
}

int cmd_verify(const std::string& theorem, int n_min, std::optional<int> n_max, int trials,
               std::uint64_t seed, double tol, std::ostream& out) {
  if (theorem == "product-criterion") {
    const auto r = exhaustive_small_n(tol);
    out << report_to_json(r) << '\n';
    return r.failures == 0 ? kOk : kCheckFailed;
  }
  const int hi = n_max.value_or(n_min);
  if (n_min < 2 || hi > kMaxQubits || hi < n_min) {
    throw UsageError("verify: need 2 <= n <= n-max <= " + std::to_string(kMaxQubits) +
                     " (the orthogonal complement is trivial for one qubit)");
  }
  if (trials < 0) throw UsageError("verify: --trials must be non-negative");
  int failures = 0;
  for (int n = n_min; n <= hi; ++n) {
    if (theorem == "sym-coherent" || theorem == "all") {
      const auto r = verify_sym_coherent(n, trials, seed, tol);
      failures += r.failures;
      out << report_to_json(r) << '\n';
    }
    if (theorem == "ortho-entangled" || theorem == "all") {
      const auto r = verify_ortho_entangled(n, trials, seed, tol);
      failures += r.failures;
      out << report_to_json(r) << '\n';
    }
  }
  return failures == 0 ? kOk : kCheckFailed;
}

int cmd_basis(int n_qubits, int k, bool as_json, std::ostream& out) {
  const DickeIndex idx(n_qubits, k);
  const auto vec = unnormalized_sym(idx);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (vec[i] != cplx{}) support.push_back(i);
  }
  const auto bits = [n_qubits](std::size_t i) {
    std::string s;
    for (int q = 1; q <= n_qubits; ++q) s += ((i >> bit_position(n_qubits, q)) & 1U) ? '1' : '0';
    return s;
  };
  if (as_json) {
    json kets = json::array();
    for (auto i : support) kets.push_back(bits(i));
    out << json{{"n_qubits", n_qubits},
                {"k", k},
                {"m", idx.m()},
                {"binomial", binomial(n_qubits, k)},
                {"support", kets}}
               .dump()
        << '\n';
    return kOk;
  }
  out << "|" << n_qubits << "," << k << "> (m = " << fmt_real(idx.m())
      << ", binom = " << fmt_real(binomial(n_qubits, k)) << "):";
  for (auto i : support) out << " |" << bits(i) << ">";
  out << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global entanglement, symmetric subspace and atomic coherent states of N qubits"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a state file");
  gen->add_option("kind", gen_args.kind, "coherent|dicke|random|random-sym|random-ortho|product")
      ->required()
      ->check(CLI::IsMember({"coherent", "dicke", "random", "random-sym", "random-ortho", "product"}));
  gen->add_option("-n,--n-qubits", gen_args.n_qubits, "Number of qubits");
  gen->add_option("--tau-re", gen_args.tau_re, "Re(tau) for coherent states");
  gen->add_option("--tau-im", gen_args.tau_im, "Im(tau) for coherent states");
  gen->add_flag("--tau-inf", gen_args.tau_inf, "Coherent state at tau = infinity (|1...1>)");
  gen->add_option("--theta", gen_args.theta, "Polar angle from -z, radians");
  gen->add_option("--phi", gen_args.phi, "Azimuth from +x, radians");
  gen->add_option("--k", gen_args.k, "Number of ones for Dicke states");
  gen->add_option("--seed", gen_args.seed, "Seed for random kinds");
  gen->add_option("--factors", gen_args.factors,
                  "Product factors separated by ';': 0|1|+|-|+i|-i or a_re,a_im,b_re,b_im "
                  "for a|1> + b|0>");
  gen->add_option("-o,--out", gen_args.out, "Output file (stdout when omitted)");

  std::string in_path;
  double tol = kDefaultTolerance;
  bool as_json = false;

  auto* analyze = app.add_subcommand("analyze", "Product test, Meyer-Wallach Q and |P_S psi|");
  analyze->add_option("in", in_path, "State file")->required();
  analyze->add_option("--tol", tol, "Product-test tolerance");
  analyze->add_flag("--json", as_json, "JSON output");

  auto* fit = app.add_subcommand("fit", "Fit a symmetric state to an atomic coherent state");
  fit->add_option("in", in_path, "State file")->required();
  fit->add_option("--tol", tol, "Tolerance for symmetry and coherence");
  fit->add_flag("--json", as_json, "JSON output");

  bool ortho = false;
  std::string project_out;
  auto* project = app.add_subcommand("project", "Project onto the symmetric subspace");
  project->add_option("in", in_path, "State file")->required();
  project->add_flag("--ortho", ortho, "With -o, write the S-perp component instead");
  project->add_option("-o,--out", project_out, "Write the normalized component to a file");
  project->add_flag("--json", as_json, "JSON output");

  std::string theorem;
  int verify_n = 0;
  std::optional<int> verify_n_max;
  int trials = 500;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Run theorem certification suites");
  verify->add_option("theorem", theorem, "sym-coherent|ortho-entangled|all|product-criterion")
      ->required()
      ->check(CLI::IsMember({"sym-coherent", "ortho-entangled", "all", "product-criterion"}));
  verify->add_option("-n,--n-qubits", verify_n, "Number of qubits (lower end with --n-max)");
  verify->add_option("--n-max", verify_n_max, "Run every N from -n to this value");
  verify->add_option("--trials", trials, "Trials per sub-suite");
  verify->add_option("--seed", seed, "Master seed");
  verify->add_option("--tol", tol, "Verdict tolerance");

  int basis_n = 0;
  int basis_k = 0;
  auto* basis = app.add_subcommand("basis", "List the support of the symmetric vector |N,k>");
  basis->add_option("-n,--n-qubits", basis_n, "Number of qubits")->required();
  basis->add_option("--k", basis_k, "Number of ones")->required();
  basis->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*gen) return cmd_gen(gen_args, out);
    if (*analyze) return cmd_analyze(in_path, tol, as_json, out);
    if (*fit) return cmd_fit(in_path, tol, as_json, out, err);
    if (*project) return cmd_project(in_path, ortho, project_out, as_json, out, err);
    if (*verify) return cmd_verify(theorem, verify_n, verify_n_max, trials, seed, tol, out);
    if (*basis) return cmd_basis(basis_n, basis_k, as_json, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    // UsageError, DimensionError, NormError and out-of-range angles.
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace globent::cli
