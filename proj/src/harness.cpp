#include "globent/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <json.hpp>

#include "compensated_sum.hpp"
#include "globent/errors.hpp"
#include "globent/seed.hpp"
#include "globent/symmetric.hpp"

namespace globent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTauRecoveryTolerance = 1e-10;
constexpr double kFactorFidelityTolerance = 1e-10;
constexpr double kOracleProductDistance = 1e-6;
constexpr int kOracleRestarts = 200;
constexpr std::uint64_t kExhaustiveSeed = 2;

// Suite tags keep the per-trial seed streams of different suites apart.
enum SuiteTag : std::uint64_t {
  kSuiteCoherent = 1,
  kSuiteRandomSymmetric,
  kSuitePerturbed,
  kSuiteOrthogonal,
  kSuiteProduct,
};

std::uint64_t trial_seed(std::uint64_t master, SuiteTag suite, int trial) {
  return mix_seed(mix_seed(master, suite), static_cast<std::uint64_t>(trial));
}

void check_theorem_args(int n_qubits, int trials) {
  check_qubit_count(n_qubits);
  if (n_qubits < 2) throw DimensionError("theorem suites need N >= 2");
  if (trials < 0) throw std::invalid_argument("trials must be non-negative");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void finish(TheoremReport& report) {
  report.failures = 0;
  for (const auto& s : report.suites) report.failures += s.failures;
}

double factor_fidelity(const QubitFactor& f, const QubitFactor& g) {
  return std::norm(std::conj(f.a) * g.a + std::conj(f.b) * g.b);
}

cplx gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::SymCoherent:
      return "SYM_COHERENT";
    case TheoremId::OrthoEntangled:
      return "ORTHO_ENTANGLED";
    case TheoremId::ProductCriterion:
      return "PRODUCT_CRITERION";
  }
  return "UNKNOWN";
}

bool same_outcome(const TheoremReport& a, const TheoremReport& b) {
  return a.theorem_id == b.theorem_id && a.n_qubits == b.n_qubits && a.trials == b.trials &&
         a.failures == b.failures && a.worst_residual == b.worst_residual && a.seed == b.seed &&
         a.suites == b.suites;
}

std::string report_to_json(const TheoremReport& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : r.suites) {
    suites.push_back({{"name", s.name},
                      {"trials", s.trials},
                      {"failures", s.failures},
                      {"worst_residual", s.worst_residual}});
  }
  nlohmann::json doc{{"theorem_id", to_string(r.theorem_id)},
                     {"n_qubits", r.n_qubits},
                     {"trials", r.trials},
                     {"failures", r.failures},
                     {"worst_residual", r.worst_residual},
                     {"seed", r.seed},
                     {"elapsed", r.elapsed_seconds},
                     {"suites", std::move(suites)}};
  return doc.dump();
}

DetectorAgreement check_detectors(const PureState& symmetric_state, double tol) {
  DetectorAgreement out;
  const auto verdict = is_product(symmetric_state, tol);
  out.product = verdict.is_product;
  out.product_residual = verdict.residual;
  const auto fit = fit_coherent(project_symmetric(symmetric_state).coeffs, tol);
  out.coherent = fit.is_coherent;
  out.fit_residual = fit.residual;
  return out;
}

CoherentParam random_coherent_param(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uz(-1.0, 1.0);
  std::uniform_real_distribution<double> az(0.0, 2.0 * std::numbers::pi);
  const double z = uz(rng);
  const double phi = az(rng);
  return CoherentParam::from_angles(std::acos(-z), phi);
}

SymCoeffs perturbed_geometric_coeffs(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> polar(0.2, std::numbers::pi - 0.2);
  std::uniform_real_distribution<double> az(0.0, 2.0 * std::numbers::pi);
  const double theta = polar(rng);
  const double phi = az(rng);
  auto d = coherent_dicke_amplitudes(n_qubits, CoherentParam::from_angles(theta, phi));
  const auto dominant = std::max_element(d.begin(), d.end(), [](cplx x, cplx y) {
    return std::abs(x) < std::abs(y);
  });
  *dominant *= 1.1;
  const double nrm = std::sqrt(norm_sq(d));
  for (auto& z : d) z /= nrm;
  return SymCoeffs::from_dicke_amplitudes(n_qubits, d);
}

PureState random_product_state(int n_qubits, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  std::mt19937_64 rng(seed);
  std::vector<QubitFactor> factors;
  for (int n = 0; n < n_qubits; ++n) {
    const cplx a = gaussian_complex(rng);
    const cplx b = gaussian_complex(rng);
    const double h = std::hypot(std::abs(a), std::abs(b));
    factors.push_back({a / h, b / h});
  }
  return product_state(factors);
}

TheoremReport verify_sym_coherent(int n_qubits, int trials, std::uint64_t seed, double tol) {
  check_theorem_args(n_qubits, trials);
  const auto start = std::chrono::steady_clock::now();
  TheoremReport report{TheoremId::SymCoherent, n_qubits, trials, 0, 0.0, seed, 0.0, {}};

  SuiteReport coherent{"coherent-is-product", trials, 0, 0.0};
  for (int t = 0; t < trials; ++t) {
    // The poles are always exercised.
    const CoherentParam p = t == 0   ? CoherentParam::from_tau(0.0)
                            : t == 1 ? CoherentParam::infinity()
                                     : random_coherent_param(trial_seed(seed, kSuiteCoherent, t));
    const PureState psi = coherent_from_tau(n_qubits, p);
    const auto verdict = is_product(psi, tol);
    const auto fit = fit_coherent(project_symmetric(psi).coeffs, tol);
    bool ok = verdict.is_product && fit.is_coherent &&
              tau_relative_error(fit.param, p) <= kTauRecoveryTolerance;
    if (verdict.is_product) {
      const auto& f = *verdict.factors;
      for (std::size_t i = 1; i < f.size(); ++i) {
        ok = ok && factor_fidelity(f[0], f[i]) >= 1.0 - kFactorFidelityTolerance;
      }
    }
    coherent.failures += ok ? 0 : 1;
    coherent.worst_residual =
        std::max({coherent.worst_residual, verdict.residual, fit.residual});
  }

  SuiteReport agreement{"random-symmetric-agreement", trials, 0, kInf};
  for (int t = 0; t < trials; ++t) {
    const auto d =
        check_detectors(random_symmetric(n_qubits, trial_seed(seed, kSuiteRandomSymmetric, t)), tol);
    agreement.failures += d.agree() ? 0 : 1;
    agreement.worst_residual =
        std::min({agreement.worst_residual, d.product_residual, d.fit_residual});
  }

  SuiteReport perturbed{"perturbed-geometric-rejected", trials, 0, kInf};
  for (int t = 0; t < trials; ++t) {
    const auto coeffs = perturbed_geometric_coeffs(n_qubits, trial_seed(seed, kSuitePerturbed, t));
    const auto d = check_detectors(coeffs.to_state(), tol);
    perturbed.failures += (!d.product && !d.coherent) ? 0 : 1;
    perturbed.worst_residual =
        std::min({perturbed.worst_residual, d.product_residual, d.fit_residual});
  }

  report.worst_residual = coherent.worst_residual;
  report.suites = {coherent, agreement, perturbed};
  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

TheoremReport verify_ortho_entangled(int n_qubits, int trials, std::uint64_t seed, double tol) {
  check_theorem_args(n_qubits, trials);
  const auto start = std::chrono::steady_clock::now();
  TheoremReport report{TheoremId::OrthoEntangled, n_qubits, trials, 0, 0.0, seed, 0.0, {}};

  SuiteReport ortho{"orthogonal-is-entangled", trials, 0, kInf};
  for (int t = 0; t < trials; ++t) {
    const auto verdict =
        is_product(random_orthogonal(n_qubits, trial_seed(seed, kSuiteOrthogonal, t)), tol);
    ortho.failures += verdict.is_product ? 1 : 0;
    ortho.worst_residual = std::min(ortho.worst_residual, verdict.residual);
  }

  SuiteReport product{"product-meets-symmetric", trials, 0, kInf};
  for (int t = 0; t < trials; ++t) {
    const auto phi = random_product_state(n_qubits, trial_seed(seed, kSuiteProduct, t));
    const double norm_in_s = project_symmetric(phi).norm_in_s;
    product.failures += norm_in_s > tol ? 0 : 1;
    product.worst_residual = std::min(product.worst_residual, norm_in_s);
  }

  report.worst_residual = product.worst_residual;
  report.suites = {ortho, product};
  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

AlternatingReport alternating_state_projections(int n_qubits) {
  check_qubit_count(n_qubits);
  if (n_qubits < 2) throw DimensionError("alternating states need N >= 2");
  AlternatingReport report;
  report.n_qubits = n_qubits;
  report.even = n_qubits % 2 == 0;

  // Qubits 1..M alternate 0,1,0,1,... where M = N (even) or N - 1 (odd).
  const int alternating = report.even ? n_qubits : n_qubits - 1;
  std::uint64_t base = 0;
  for (int q = 2; q <= alternating; q += 2) base |= std::uint64_t{1} << bit_position(n_qubits, q);

  std::vector<std::uint64_t> indices;
  if (report.even) {
    indices = {base};
  } else {
    indices = {base | 1, base};  // last qubit in |1>, then in |0>
  }

  std::vector<Amplitudes> projected;
  for (const auto idx : indices) {
    const auto proj = project_symmetric(PureState::basis(n_qubits, idx));
    const int k = std::popcount(idx);
    report.overlaps.push_back({k, k - 0.5 * n_qubits, idx, proj.dicke_overlaps[k]});
    projected.push_back(proj.sym_part);
  }

  if (report.even) {
    report.min_projection_sq = norm_sq(projected[0]);
    return report;
  }

  const double g11 = norm_sq(projected[0]);
  const double g00 = norm_sq(projected[1]);
  const cplx g10 = inner(projected[0], projected[1]);
  double best = kInf;
  for (int deg_theta = 0; deg_theta <= 180; ++deg_theta) {
    const double half = 0.5 * deg_theta * std::numbers::pi / 180.0;
    for (int deg_phi = 0; deg_phi < 360; ++deg_phi) {
      const cplx a = std::sin(half) * std::polar(1.0, deg_phi * std::numbers::pi / 180.0);
      const double b = std::cos(half);
      const double n2 =
          std::norm(a) * g11 + b * b * g00 + 2.0 * std::real(std::conj(a) * b * g10);
      best = std::min(best, n2);
    }
  }
  report.min_projection_sq = best;
  return report;
}

double product_distance_oracle(const PureState& psi, int restarts, std::uint64_t seed) {
  const int nq = psi.n_qubits();
  const std::size_t dim = psi.dim();
  std::mt19937_64 rng(seed);
  double best = kInf;

  // f[m][bit] is the amplitude of |bit> in factor m (0-based qubit).
  std::vector<std::array<cplx, 2>> f(nq);
  const auto bit_of = [nq](std::size_t i, int m) {
    return static_cast<int>((i >> bit_position(nq, m + 1)) & 1U);
  };

  for (int r = 0; r < restarts; ++r) {
    for (auto& fm : f) {
      fm = {gaussian_complex(rng), gaussian_complex(rng)};
      const double h = std::hypot(std::abs(fm[0]), std::abs(fm[1]));
      fm[0] /= h;
      fm[1] /= h;
    }
    double last = -1.0;
    for (int sweep = 0; sweep < 1000; ++sweep) {
      double g_norm = 0.0;
      for (int n = 0; n < nq; ++n) {
        std::array<cplx, 2> g{};
        for (std::size_t i = 0; i < dim; ++i) {
          cplx w = psi[i];
          for (int m = 0; m < nq; ++m) {
            if (m != n) w *= std::conj(f[m][bit_of(i, m)]);
          }
          g[bit_of(i, n)] += w;
        }
        g_norm = std::hypot(std::abs(g[0]), std::abs(g[1]));
        if (g_norm == 0.0) break;
        f[n] = {g[0] / g_norm, g[1] / g_norm};
      }
      if (std::abs(g_norm - last) <= 1e-15) break;
      last = g_norm;
    }

    std::vector<QubitFactor> factors;
    for (const auto& fm : f) factors.push_back({fm[1], fm[0]});
    const PureState prod = product_state(factors);
    const cplx ov = inner(prod, psi);
    const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx{1.0, 0.0};
    detail::CompensatedSum s;
    for (std::size_t i = 0; i < dim; ++i) s.add(std::norm(psi[i] - phase * prod[i]));
    best = std::min(best, std::sqrt(s.value()));
  }
  return best;
}

TheoremReport exhaustive_small_n(double tol) {
  const auto start = std::chrono::steady_clock::now();
  TheoremReport report{TheoremId::ProductCriterion, 3, 0, 0, 0.0, kExhaustiveSeed, 0.0, {}};
  std::uint64_t oracle_stream = 0;

  // expect_product selects how the suite's worst_residual is summarized:
  // largest oracle distance for product corpora, smallest otherwise.
  const auto run_suite = [&](const std::string& name, const std::vector<PureState>& corpus,
                             bool expect_product) {
    SuiteReport suite{name, static_cast<int>(corpus.size()), 0, expect_product ? 0.0 : kInf};
    for (const auto& psi : corpus) {
      const bool verdict = is_product(psi, tol).is_product;
      const double dist =
          product_distance_oracle(psi, kOracleRestarts, mix_seed(kExhaustiveSeed, ++oracle_stream));
      const bool oracle = dist < kOracleProductDistance;
      suite.failures += verdict == oracle ? 0 : 1;
      suite.worst_residual = expect_product ? std::max(suite.worst_residual, dist)
                                            : std::min(suite.worst_residual, dist);
      if (verdict) report.worst_residual = std::max(report.worst_residual, dist);
    }
    report.trials += suite.trials;
    report.suites.push_back(suite);
  };

  const double r2 = 1.0 / std::sqrt(2.0);
  for (int nq : {2, 3}) {
    const std::string tag = "n" + std::to_string(nq) + "-";

    std::vector<PureState> basis;
    for (std::uint64_t i = 0; i < dimension(nq); ++i) basis.push_back(PureState::basis(nq, i));
    run_suite(tag + "basis", basis, true);

    std::vector<PureState> named;
    if (nq == 2) {
      named.push_back(PureState::from_amplitudes(2, {r2, 0, 0, r2}));    // Bell
      named.push_back(PureState::from_amplitudes(2, {0, r2, -r2, 0}));   // singlet
    } else {
      named.push_back(PureState::from_amplitudes(3, {r2, 0, 0, 0, 0, 0, 0, r2}));  // GHZ
      named.push_back(PureState::from_amplitudes(3, {0, 1, 1, 0, 1, 0, 0, 0}));    // W
    }
    run_suite(tag + "named-entangled", named, false);

    std::vector<PureState> products;
    std::vector<PureState> haar;
    for (int t = 0; t < 100; ++t) {
      products.push_back(random_product_state(nq, trial_seed(kExhaustiveSeed, kSuiteProduct, t)));
      haar.push_back(random_state(nq, mix_seed(kExhaustiveSeed * 1000 + nq, t)));
    }
    run_suite(tag + "random-product", products, true);
    run_suite(tag + "haar", haar, false);
  }

  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

}  // namespace globent
