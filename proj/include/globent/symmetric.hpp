#pragma once

// Symmetric subspace S of the N-qubit space, spanned by the Dicke states
// |m>, m = k - N/2, where k is the number of 1s. The unnormalized vector
// |N,k> is the plain sum of all basis states with k ones, so
// |N,k> = binom(N,k)^(1/2) |m = k - N/2>.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "globent/state.hpp"

namespace globent {

// binom(n, k) as a double via the multiplicative formula; every partial
// product is itself a binomial coefficient, so the result is exact while it
// fits in 53 bits. Zero outside 0 <= k <= n.
double binomial(int n, int k);

class DickeIndex {
 public:
  DickeIndex(int n_qubits, int k);

  int n_qubits() const noexcept { return n_qubits_; }
  int k() const noexcept { return k_; }
  double m() const noexcept { return k_ - 0.5 * n_qubits_; }

 private:
  int n_qubits_;
  int k_;
};

// Coefficients c_k of |psi> = sum_k c_k |N,k>. Normalized states satisfy
// sum_k binom(N,k) |c_k|^2 = 1; intermediate results (lowering maps,
// projections) need not.
struct SymCoeffs {
  int n_qubits = 0;
  std::vector<cplx> c;  // N + 1 entries

  // sum_k binom(N,k) |c_k|^2
  double norm_sq() const;
  // Amplitudes on the normalized Dicke basis: binom(N,k)^(1/2) c_k.
  std::vector<cplx> dicke_amplitudes() const;
  static SymCoeffs from_dicke_amplitudes(int n_qubits, std::span<const cplx> d);
  // Full-space vector sum_k c_k |N,k> (unnormalized in general).
  Amplitudes to_amplitudes() const;
  PureState to_state() const;
};

PureState dicke_state(const DickeIndex& idx);

// Full-space |N,k>: 1 on every basis index with k set bits, 0 elsewhere.
Amplitudes unnormalized_sym(const DickeIndex& idx);

// (|N-1,k>, |N-1,k-1>) with out-of-range members equal to the zero vector,
// so that |N,k> = |0>_n (x) first + |1>_n (x) second for every n.
// Requires N >= 2. The qubit n is accepted for interface symmetry with
// decompose(); the result does not depend on it.
std::pair<Amplitudes, Amplitudes> recurrence_split(const DickeIndex& idx, int n);

struct SymProjection {
  Amplitudes sym_part;             // P_S psi in the full space
  std::vector<cplx> dicke_overlaps; // <Dicke(N,k)|psi>, k = 0..N
  SymCoeffs coeffs;                // P_S psi in the |N,k> basis
  double norm_in_s = 0.0;          // |P_S psi|
};

// One O(2^N) pass bucketing amplitudes by popcount.
SymProjection project_symmetric(std::span<const cplx> amps, int n_qubits);
SymProjection project_symmetric(const PureState& psi);

// |psi - P_S psi|, computed from the difference vector.
double distance_from_symmetric(const PureState& psi);

// Throws NotSymmetric when |psi - P_S psi| > tol.
SymCoeffs to_sym_coeffs(const PureState& psi, double tol = 1e-10);

// l_n(0): (c_0 .. c_{N-1}); l_n(1): (c_1 .. c_N), both over N-1 qubits.
// Requires N >= 2 and bit in {0, 1}.
SymCoeffs lowering_map(const SymCoeffs& coeffs, int bit);

// Gaussian coefficients on the Dicke basis, normalized.
PureState random_symmetric(int n_qubits, std::uint64_t seed);

// Gaussian full-space vector with its S component removed, renormalized.
// Requires N >= 2 since S-perp is {0} for a single qubit.
PureState random_orthogonal(int n_qubits, std::uint64_t seed);

}  // namespace globent
