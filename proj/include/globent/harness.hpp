#pragma once

// Randomized and exhaustive certification of two facts about N-qubit pure
// states:
//   SYM_COHERENT     a symmetric state is a product state iff it is an
//                    atomic coherent state;
//   ORTHO_ENTANGLED  every state orthogonal to the symmetric subspace is
//                    globally entangled.
// PRODUCT_CRITERION cross-checks the slice-parallelism product test against
// a brute-force factorization search at N = 2, 3.
//
// Per-trial seeds are mix_seed(mix_seed(seed, suite), trial), so a report is
// reproducible from (theorem, N, trials, seed) regardless of trial order.

#include <cstdint>
#include <string>
#include <vector>

#include "globent/coherent.hpp"
#include "globent/separability.hpp"
#include "globent/state.hpp"

namespace globent {

enum class TheoremId { SymCoherent, OrthoEntangled, ProductCriterion };

std::string to_string(TheoremId id);

struct SuiteReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;

  friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

struct TheoremReport {
  TheoremId theorem_id = TheoremId::SymCoherent;
  int n_qubits = 0;
  int trials = 0;
  int failures = 0;
  // SYM_COHERENT: largest product/fit residual over generated coherent states.
  // ORTHO_ENTANGLED: smallest |P_S phi| over random product states.
  // PRODUCT_CRITERION: largest oracle distance among states judged product.
  double worst_residual = 0.0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
  std::vector<SuiteReport> suites;
};

// Everything except elapsed time.
bool same_outcome(const TheoremReport& a, const TheoremReport& b);

std::string report_to_json(const TheoremReport& r);

// The two detectors on one symmetric state: slice-parallelism in the full
// space and the geometric-progression fit on the symmetric coefficients.
struct DetectorAgreement {
  bool product = false;
  bool coherent = false;
  double product_residual = 0.0;
  double fit_residual = 0.0;
  bool agree() const noexcept { return product == coherent; }
};

DetectorAgreement check_detectors(const PureState& symmetric_state, double tol = kDefaultTolerance);

// Uniform point on the Bloch sphere.
CoherentParam random_coherent_param(std::uint64_t seed);

// Geometric sequence tau^k with its dominant Dicke component scaled by 1.1,
// normalized; tau is drawn with theta in [0.2, pi - 0.2] so the bump is
// never negligible.
SymCoeffs perturbed_geometric_coeffs(int n_qubits, std::uint64_t seed);

PureState random_product_state(int n_qubits, std::uint64_t seed);

// Sub-suites: (a) random coherent states are product, have N identical
// factors and fit back to their tau; (b) random symmetric states get the same
// verdict from both detectors; (c) perturbed geometric sequences are rejected
// by both. Requires N >= 2.
TheoremReport verify_sym_coherent(int n_qubits, int trials, std::uint64_t seed,
                                  double tol = kDefaultTolerance);

// Sub-suites: (a) random states of S-perp are entangled; (b) random product
// states have |P_S phi| > tol. Requires N >= 2.
TheoremReport verify_ortho_entangled(int n_qubits, int trials, std::uint64_t seed,
                                     double tol = kDefaultTolerance);

struct DickeOverlap {
  int k = 0;
  double m = 0.0;
  std::uint64_t basis_index = 0;
  cplx overlap;  // <Dicke(N,k)|basis state>
};

struct AlternatingReport {
  int n_qubits = 0;
  bool even = true;
  // Even N: the single state |0101...01>. Odd N: the two completions
  // |0101...1 1> and |0101...1 0> of the last qubit.
  std::vector<DickeOverlap> overlaps;
  // Min over last-qubit states a|1> + b|0> (1-degree Bloch grid) of
  // |P_S phi|^2; equals the squared overlap for even N.
  double min_projection_sq = 0.0;
};

AlternatingReport alternating_state_projections(int n_qubits);

// Brute-force product search: alternating maximization of |<(x)f|psi>| over
// single-qubit factors from `restarts` random starts. Returns
// min || psi - e^{i chi} (x)f || over the factors and phase found.
double product_distance_oracle(const PureState& psi, int restarts, std::uint64_t seed);

// Fixed corpus at N = 2 and N = 3 (basis states, Bell/GHZ/W, 100 random
// product and 100 Haar states per N), judged by is_product and by the
// 200-restart oracle (product iff distance < 1e-6).
TheoremReport exhaustive_small_n(double tol = kDefaultTolerance);

}  // namespace globent
