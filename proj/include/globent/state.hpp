#pragma once

// Dense N-qubit pure states.
//
// Indexing convention: qubit n (1-based, n = 1..N) occupies bit position
// N - n of the basis index, so qubit 1 is the most significant bit and
// |0,0,1> for N = 3 is index 1. A set bit means the qubit is in |1>.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace globent {

using cplx = std::complex<double>;
using Amplitudes = std::vector<cplx>;

inline constexpr int kMaxQubits = 20;
inline constexpr double kNormTolerance = 1e-12;

// Row-major 2x2 operator on one qubit, basis order (|0>, |1>).
using Mat2 = std::array<std::array<cplx, 2>, 2>;

class PureState {
 public:
  // Scales amps to unit norm. Global phase is kept as given.
  static PureState from_amplitudes(int n_qubits, Amplitudes amps);

  // Adopts amps without rescaling; rejects them unless | ||amps|| - 1 | <= tol.
  static PureState from_normalized(int n_qubits, Amplitudes amps, double tol = 1e-10);

  static PureState basis(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  PureState(int n_qubits, Amplitudes amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {}

  int n_qubits_;
  Amplitudes amps_;
};

// One qubit in the form a|1> + b|0>.
struct QubitFactor {
  cplx a;  // amplitude of |1>
  cplx b;  // amplitude of |0>

  friend bool operator==(const QubitFactor&, const QubitFactor&) = default;
};

// |psi> = |0>_n (x) u + |1>_n (x) v.
struct QubitDecomposition {
  int n_qubits = 0;
  int n = 0;  // 1-based qubit index
  Amplitudes u;
  Amplitudes v;
};

std::size_t dimension(int n_qubits);

// Throws DimensionError unless 1 <= n_qubits <= kMaxQubits.
void check_qubit_count(int n_qubits);

// Bit position of 1-based qubit n in an N-qubit basis index.
inline int bit_position(int n_qubits, int n) { return n_qubits - n; }

QubitFactor make_factor(cplx a, cplx b);

PureState product_state(std::span<const QubitFactor> factors);

QubitDecomposition decompose(const PureState& psi, int n);
PureState recompose(const QubitDecomposition& d);

// Raw slice/merge on unnormalized full-space vectors; decompose/recompose
// are the state-level wrappers.
void split_at_qubit(std::span<const cplx> amps, int n_qubits, int n, Amplitudes& zero_part,
                    Amplitudes& one_part);
Amplitudes merge_at_qubit(std::span<const cplx> zero_part, std::span<const cplx> one_part,
                          int n_qubits, int n);

cplx inner(const PureState& psi, const PureState& phi);
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm_sq(std::span<const cplx> x);

// |<psi|phi>|^2
double fidelity(const PureState& psi, const PureState& phi);

// Haar-random pure state: 2^N iid standard complex Gaussians, normalized.
PureState random_state(int n_qubits, std::uint64_t seed);

PureState apply_single_qubit(const PureState& psi, int n, const Mat2& op);

// Relabels qubits: qubit n of psi becomes qubit perm[n-1] of the result
// (perm holds a permutation of 1..N).
PureState permute_qubits(const PureState& psi, std::span<const int> perm);

}  // namespace globent
