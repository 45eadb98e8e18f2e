// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "globent/coherent.hpp"
#include "globent/harness.hpp"
#include "globent/separability.hpp"
#include "globent/symmetric.hpp"
#include "oracles.hpp"

#ifndef GLOBENT_BINARY
#error "GLOBENT_BINARY must name the CLI executable"
#endif

using namespace globent;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

CoherentParam random_param(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> z(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  return CoherentParam::from_angles(std::acos(z(rng)), ph(rng));
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

// ---------- 1 ----------
Outcome representation_equivalence() {
  std::mt19937_64 rng(101);
  double worst = 1.0;
  for (int n = 1; n <= 10; ++n) {
    for (int t = 0; t < 50; ++t) {
      const auto p = random_param(rng);
      const auto a = rotation_state(n, p.theta(), p.phi());
      const auto b = coherent_from_dicke(n, p);
      const auto c = coherent_from_tau(n, p);
      worst = std::min({worst, oracle::fidelity(a.amplitudes(), b.amplitudes()),
                        oracle::fidelity(a.amplitudes(), c.amplitudes()),
                        oracle::fidelity(b.amplitudes(), c.amplitudes())});
    }
  }
  return {worst >= 1.0 - 1e-10, "min pairwise fidelity " + std::to_string(worst)};
}

// ---------- 2 ----------
Outcome coherent_is_product() {
  std::mt19937_64 rng(102);
  double worst_res = 0.0;
  double worst_fid = 1.0;
  bool all_product = true;
  for (int n = 1; n <= 10; ++n) {
    std::vector<CoherentParam> params{CoherentParam::from_tau(0.0), CoherentParam::infinity()};
    for (int t = 0; t < 50; ++t) params.push_back(random_param(rng));
    for (const auto& p : params) {
      const auto v = is_product(coherent_from_tau(n, p));
      worst_res = std::max(worst_res, v.residual);
      if (!v.is_product || !v.factors || static_cast<int>(v.factors->size()) != n) {
        all_product = false;
        continue;
      }
      for (const auto& f : *v.factors) {
        for (const auto& g : *v.factors) worst_fid = std::min(worst_fid, oracle::factor_fidelity(f, g));
      }
    }
  }
  const bool ok = all_product && worst_res < 1e-12 && worst_fid >= 1.0 - 1e-10;
  return {ok, "max residual " + sci(worst_res) + ", min factor fidelity " + std::to_string(worst_fid)};
}

// ---------- 3 ----------
Outcome sym_coherent_reverse() {
  int failures = 0;
  std::string agreement;
  for (int n = 2; n <= 8; ++n) {
    const auto r = verify_sym_coherent(n, 500, 1);
    failures += r.failures;
    for (const auto& s : r.suites) {
      if (s.name == "random-symmetric-agreement" && s.failures != 0) agreement += " N=" + std::to_string(n);
    }
  }
  return {failures == 0 && agreement.empty(),
          "failures " + std::to_string(failures) +
              (agreement.empty() ? ", detectors agree on every trial" : ", disagreement at" + agreement)};
}

// ---------- 4 ----------
Outcome ortho_entangled() {
  int failures = 0;
  double min_proj = 1.0;
  for (int n = 2; n <= 8; ++n) {
    const auto r = verify_ortho_entangled(n, 500, 1);
    failures += r.failures;
    min_proj = std::min(min_proj, r.worst_residual);
  }
  const double r2 = 1.0 / std::sqrt(2.0);
  const auto singlet = PureState::from_amplitudes(2, {0, r2, -r2, 0});
  const auto v = is_product(singlet);
  const auto d = decompose(singlet, 1);
  const double w = wedge_defect(d.u, d.v);
  const double w_oracle = oracle::wedge_pairs(oracle::gather_slice(singlet.amplitudes(), 2, 1, 0),
                                              oracle::gather_slice(singlet.amplitudes(), 2, 1, 1));
  const bool ok = failures == 0 && !v.is_product && std::abs(w - 0.25) <= 1e-12 &&
                  std::abs(w_oracle - 0.25) <= 1e-12;
  return {ok, "failures " + std::to_string(failures) + ", min |P_S product| " + sci(min_proj) +
                  ", singlet defect " + std::to_string(w)};
}

// ---------- 5 ----------
Outcome highest_weight() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    worst = std::max(worst, eigen_residual(CoherentParam::from_tau(0.0), n));
    worst = std::max(worst, eigen_residual(CoherentParam::infinity(), n));
    for (int t = 0; t < 100; ++t) worst = std::max(worst, eigen_residual(random_param(rng), n));
  }
  return {worst < 1e-10, "max eigen residual " + sci(worst)};
}

// ---------- 6 ----------
Outcome recurrence_identity() {
  int mismatches = 0;
  int checked = 0;
  for (int n = 2; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      // Reference |N,k> and its slices built by direct index tests.
      Amplitudes whole(std::size_t{1} << n);
      for (std::size_t i = 0; i < whole.size(); ++i) whole[i] = std::popcount(i) == k ? 1.0 : 0.0;
      if (unnormalized_sym(DickeIndex(n, k)) != whole) ++mismatches;
      if (binomial(n, k) != (k == 0 || k == n ? 1.0 : binomial(n - 1, k) + binomial(n - 1, k - 1))) {
        ++mismatches;
      }
      for (int q = 1; q <= n; ++q) {
        const auto [lo, hi] = recurrence_split(DickeIndex(n, k), q);
        if (lo != oracle::gather_slice(whole, n, q, 0) || hi != oracle::gather_slice(whole, n, q, 1) ||
            merge_at_qubit(lo, hi, n, q) != whole) {
          ++mismatches;
        }
        ++checked;
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " (N,k,n) cases, " + std::to_string(mismatches) +
                               " mismatches"};
}

// ---------- 7 ----------
Outcome dicke_orthonormality() {
  double worst = 0.0;
  bool counts = true;
  for (int n = 1; n <= 12; ++n) {
    std::vector<PureState> d;
    for (int k = 0; k <= n; ++k) {
      d.push_back(dicke_state(DickeIndex(n, k)));
      const auto v = unnormalized_sym(DickeIndex(n, k));
      std::size_t ones = 0;
      for (const auto& z : v) ones += z == cplx(1.0, 0.0);
      if (static_cast<double>(ones) != binomial(n, k)) counts = false;
    }
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        worst = std::max(worst, std::abs(inner(d[i], d[j]) - (i == j ? 1.0 : 0.0)));
      }
    }
  }
  return {counts && worst <= 1e-12,
          "max |G - I| " + sci(worst) + (counts ? ", unit-entry counts match" : ", count mismatch")};
}

// ---------- 8 ----------
double oracle_q(const PureState& psi) {
  const int n = psi.n_qubits();
  double s = 0.0;
  for (int q = 1; q <= n; ++q) {
    s += oracle::wedge_pairs(oracle::gather_slice(psi.amplitudes(), n, q, 0),
                             oracle::gather_slice(psi.amplitudes(), n, q, 1));
  }
  return 4.0 * s / n;
}

Outcome meyer_wallach() {
  std::mt19937_64 rng(108);
  double worst_product = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<QubitFactor> f;
    for (int q = 0; q < 1 + t % 8; ++q) f.push_back(oracle::random_factor(rng));
    worst_product = std::max(worst_product, meyer_wallach_q(product_state(f)));
  }
  const double r2 = 1.0 / std::sqrt(2.0);
  const auto bell = PureState::from_amplitudes(2, {r2, 0, 0, r2});
  const auto w3 = PureState::from_amplitudes(3, {0, 1, 1, 0, 1, 0, 0, 0});
  const double q_bell = meyer_wallach_q(bell);
  const double q_w = meyer_wallach_q(w3);
  const bool oracle_ok = std::abs(oracle_q(bell) - 1.0) <= 1e-10 &&
                         std::abs(oracle_q(w3) - 8.0 / 9.0) <= 1e-10;

  double worst_inv = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 7;
    auto psi = random_state(n, 1000 + t);
    const double q0 = meyer_wallach_q(psi);
    for (int q = 1; q <= n; ++q) psi = apply_single_qubit(psi, q, oracle::random_unitary(rng));
    worst_inv = std::max(worst_inv, std::abs(meyer_wallach_q(psi) - q0));
  }
  const bool ok = worst_product < 1e-10 && std::abs(q_bell - 1.0) <= 1e-10 &&
                  std::abs(q_w - 8.0 / 9.0) <= 1e-10 && oracle_ok && worst_inv <= 1e-9;
  return {ok, "max Q(product) " + sci(worst_product) + ", Q(Bell) " + std::to_string(q_bell) +
                  ", Q(W3) " + std::to_string(q_w) + ", max LU drift " + sci(worst_inv)};
}

// ---------- 9 ----------
Outcome oracle_equivalence() {
  const auto r = exhaustive_small_n();
  int trials = 0;
  for (const auto& s : r.suites) trials += s.trials;
  return {r.failures == 0, std::to_string(trials) + " states, " + std::to_string(r.failures) +
                               " disagreements"};
}

// ---------- 10 ----------
Outcome alternating_projections() {
  const auto d42 = dicke_state(DickeIndex(4, 2));
  const double ov = std::abs(inner(d42, PureState::basis(4, 0b0101)));
  bool ok = std::abs(ov - 1.0 / std::sqrt(6.0)) <= 1e-12;
  const auto r4 = alternating_state_projections(4);
  ok = ok && r4.overlaps.size() == 1 && std::abs(std::abs(r4.overlaps[0].overlap) - ov) <= 1e-12;
  std::string odd;
  for (int n = 3; n <= 11; n += 2) {
    const auto r = alternating_state_projections(n);
    bool this_ok = r.overlaps.size() == 2 && r.min_projection_sq > 0.0;
    for (const auto& o : r.overlaps) {
      this_ok = this_ok && std::abs(o.m) == 0.5 &&
                std::abs(std::norm(o.overlap) - 1.0 / binomial(n, o.k)) <= 1e-12;
    }
    if (!this_ok) odd += " N=" + std::to_string(n);
    ok = ok && this_ok;
  }
  return {ok, "<Dicke(4,2)|0101> = " + std::to_string(ov) +
                  (odd.empty() ? ", odd N 3..11 overlaps nonzero at m = +-1/2" : ", odd failures" + odd)};
}

// ---------- 11 ----------
struct Shell {
  int code = -1;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string("\"") + GLOBENT_BINARY + "\" " + args + " 2>/dev/null";
  Shell r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_contract() {
  const auto dir = std::filesystem::temp_directory_path() / "globent_acceptance";
  std::filesystem::create_directories(dir);
  const auto file = [&](const std::string& name) { return "\"" + (dir / name).string() + "\""; };
  std::string problems;

  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> lm(-2.0, 2.0), ph(0.0, 2 * kPi);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const cplx tau = std::polar(std::pow(10.0, lm(rng)), ph(rng));
    const int n = 2 + t % 6;
    std::ostringstream g;
    g.precision(17);
    g << "gen coherent -n " << n << " --tau-re " << tau.real() << " --tau-im " << tau.imag() << " -o "
      << file("rt.json");
    if (shell(g.str()).code != 0) problems += " gen";
    const auto a = shell("analyze --json " + file("rt.json"));
    if (a.code != 0 || !nlohmann::json::parse(a.out).at("is_product").get<bool>()) problems += " analyze";
    const auto f = shell("fit --json " + file("rt.json"));
    if (f.code != 0) {
      problems += " fit";
      continue;
    }
    const auto j = nlohmann::json::parse(f.out);
    const cplx est{j.at("tau")[0].get<double>(), j.at("tau")[1].get<double>()};
    worst = std::max(worst, std::abs(est - tau) / std::max(1.0, std::abs(tau)));
  }
  if (shell("gen coherent -n 4 --tau-inf -o " + file("inf.json")).code != 0 ||
      nlohmann::json::parse(shell("fit --json " + file("inf.json")).out).at("tau") != "INFINITY") {
    problems += " infinity";
  }

  std::ofstream(dir / "bad.json") << R"({"n_qubits": 2, "amplitudes": [[1, 0]]})";
  std::ofstream(dir / "ghz.json")
      << R"({"n_qubits": 3, "amplitudes": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]})";
  shell("gen product --factors \"0;1\" -o " + file("asym.json"));
  const std::vector<std::pair<std::string, int>> matrix{
      {"verify all -n 4 --trials 500 --seed 1", 0},
      {"verify ortho-entangled -n 2", 0},
      {"verify all -n 1", 1},
      {"verify sym-coherent -n 21", 1},
      {"verify nonsense -n 3", 1},
      {"gen coherent -n 3", 1},
      {"gen dicke -n 3 --k 5", 1},
      {"gen random -n 3 --seed 9", 0},
      {"gen nonsense -n 3", 1},
      {"analyze " + file("bad.json"), 1},
      {"analyze " + file("missing.json"), 1},
      {"analyze " + file("ghz.json"), 0},
      {"fit " + file("ghz.json"), 0},
      {"fit " + file("asym.json"), 2},
      {"project " + file("ghz.json"), 0},
      {"basis -n 3 --k 1", 0},
      {"", 1},
      {"--help", 0},
  };
  int wrong = 0;
  for (const auto& [args, expected] : matrix) {
    const int code = shell(args).code;
    if (code != expected) {
      ++wrong;
      problems += " [" + args + " -> " + std::to_string(code) + "]";
    }
  }
  std::filesystem::remove_all(dir);
  const bool ok = problems.empty() && worst <= 1e-10;
  return {ok, "max tau rel err " + sci(worst) + ", " + std::to_string(matrix.size() - wrong) + "/" +
                  std::to_string(matrix.size()) + " exit codes" + (problems.empty() ? "" : ";" + problems)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
    double time_limit;  // seconds; 0 means none
  };
  const std::vector<Criterion> criteria{
      {1, "representation-equivalence", representation_equivalence, 5.0},
      {2, "coherent-states-are-product", coherent_is_product, 0.0},
      {3, "symmetric-product-iff-coherent", sym_coherent_reverse, 30.0},
      {4, "orthogonal-complement-entangled", ortho_entangled, 30.0},
      {5, "highest-weight-eigenvector", highest_weight, 0.0},
      {6, "recurrence-and-binomial-identity", recurrence_identity, 0.0},
      {7, "dicke-orthonormality", dicke_orthonormality, 0.0},
      {8, "meyer-wallach-sanity", meyer_wallach, 0.0},
      {9, "oracle-equivalence", oracle_equivalence, 0.0},
      {10, "alternating-state-projections", alternating_projections, 0.0},
      {11, "cli-contract", cli_contract, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += ", over time limit";
    }
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " ("
              << t.str() << " s)" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
