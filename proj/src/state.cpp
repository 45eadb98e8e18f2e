#include "globent/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "compensated_sum.hpp"
#include "globent/errors.hpp"

namespace globent {

std::size_t dimension(int n_qubits) {
  check_qubit_count(n_qubits);
  return std::size_t{1} << n_qubits;
}

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DimensionError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                         std::to_string(n_qubits));
  }
}

namespace {

void check_length(int n_qubits, std::size_t len) {
  if (len != dimension(n_qubits)) {
    throw DimensionError("expected " + std::to_string(dimension(n_qubits)) +
                         " amplitudes for " + std::to_string(n_qubits) + " qubits, got " +
                         std::to_string(len));
  }
}

void check_qubit_index(int n_qubits, int n) {
  if (n < 1 || n > n_qubits) {
    throw DimensionError("qubit index " + std::to_string(n) + " out of range 1.." +
                         std::to_string(n_qubits));
  }
}

}  // namespace

PureState PureState::from_amplitudes(int n_qubits, Amplitudes amps) {
  check_length(n_qubits, amps.size());
  const double nrm = std::sqrt(norm_sq(amps));
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NormError("cannot normalize a zero or non-finite amplitude vector");
  }
  if (nrm != 1.0) {
    for (auto& z : amps) z /= nrm;
  }
  return PureState(n_qubits, std::move(amps));
}

PureState PureState::from_normalized(int n_qubits, Amplitudes amps, double tol) {
  check_length(n_qubits, amps.size());
  const double nrm = std::sqrt(norm_sq(amps));
  if (!(std::abs(nrm - 1.0) <= tol)) {
    throw NormError("amplitude vector has norm " + std::to_string(nrm) + ", expected 1");
  }
  return PureState(n_qubits, std::move(amps));
}

PureState PureState::basis(int n_qubits, std::uint64_t index) {
  Amplitudes amps(dimension(n_qubits));
  if (index >= amps.size()) {
    throw DimensionError("basis index " + std::to_string(index) + " out of range");
  }
  amps[index] = 1.0;
  return PureState(n_qubits, std::move(amps));
}

QubitFactor make_factor(cplx a, cplx b) {
  const double n2 = std::norm(a) + std::norm(b);
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    throw NormError("qubit factor has |a|^2+|b|^2 = " + std::to_string(n2));
  }
  return {a, b};
}

PureState product_state(std::span<const QubitFactor> factors) {
  if (factors.empty()) throw DimensionError("product_state needs at least one factor");
  const int n_qubits = static_cast<int>(factors.size());
  check_qubit_count(n_qubits);

  // Kronecker product built left to right; qubit 1 ends up most significant.
  Amplitudes amps{cplx{1.0, 0.0}};
  amps.reserve(dimension(n_qubits));
  for (const auto& f : factors) {
    make_factor(f.a, f.b);
    Amplitudes next(amps.size() * 2);
    for (std::size_t j = 0; j < amps.size(); ++j) {
      next[2 * j] = amps[j] * f.b;
      next[2 * j + 1] = amps[j] * f.a;
    }
    amps = std::move(next);
  }
  return PureState::from_normalized(n_qubits, std::move(amps));
}

void split_at_qubit(std::span<const cplx> amps, int n_qubits, int n, Amplitudes& zero_part,
                    Amplitudes& one_part) {
  check_length(n_qubits, amps.size());
  check_qubit_index(n_qubits, n);
  const int p = bit_position(n_qubits, n);
  const std::size_t half = amps.size() / 2;
  const std::size_t low_mask = (std::size_t{1} << p) - 1;
  zero_part.resize(half);
  one_part.resize(half);
  for (std::size_t j = 0; j < half; ++j) {
    const std::size_t i0 = ((j & ~low_mask) << 1) | (j & low_mask);
    zero_part[j] = amps[i0];
    one_part[j] = amps[i0 | (std::size_t{1} << p)];
  }
}

Amplitudes merge_at_qubit(std::span<const cplx> zero_part, std::span<const cplx> one_part,
                          int n_qubits, int n) {
  check_qubit_index(n_qubits, n);
  const std::size_t half = dimension(n_qubits) / 2;
  if (zero_part.size() != half || one_part.size() != half) {
    throw DimensionError("slice length " + std::to_string(zero_part.size()) + "/" +
                         std::to_string(one_part.size()) + " does not match 2^(N-1) = " +
                         std::to_string(half));
  }
  const int p = bit_position(n_qubits, n);
  const std::size_t low_mask = (std::size_t{1} << p) - 1;
  Amplitudes out(2 * half);
  for (std::size_t j = 0; j < half; ++j) {
    const std::size_t i0 = ((j & ~low_mask) << 1) | (j & low_mask);
    out[i0] = zero_part[j];
    out[i0 | (std::size_t{1} << p)] = one_part[j];
  }
  return out;
}

QubitDecomposition decompose(const PureState& psi, int n) {
  QubitDecomposition d;
  d.n_qubits = psi.n_qubits();
  d.n = n;
  split_at_qubit(psi.amplitudes(), psi.n_qubits(), n, d.u, d.v);
  return d;
}

PureState recompose(const QubitDecomposition& d) {
  check_qubit_count(d.n_qubits);
  auto amps = merge_at_qubit(d.u, d.v, d.n_qubits, d.n);
  return PureState::from_normalized(d.n_qubits, std::move(amps));
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) {
    throw DimensionError("inner product of vectors with lengths " + std::to_string(x.size()) +
                         " and " + std::to_string(y.size()));
  }
  detail::CompensatedComplexSum s;
  for (std::size_t i = 0; i < x.size(); ++i) s.add(std::conj(x[i]) * y[i]);
  return s.value();
}

cplx inner(const PureState& psi, const PureState& phi) {
  if (psi.n_qubits() != phi.n_qubits()) {
    throw DimensionError("inner product of states with different qubit counts");
  }
  return inner(psi.amplitudes(), phi.amplitudes());
}

double norm_sq(std::span<const cplx> x) {
  detail::CompensatedSum s;
  for (const auto& z : x) s.add(std::norm(z));
  return s.value();
}

double fidelity(const PureState& psi, const PureState& phi) { return std::norm(inner(psi, phi)); }

PureState random_state(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Amplitudes amps(dimension(n_qubits));
  for (auto& z : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  return PureState::from_amplitudes(n_qubits, std::move(amps));
}

PureState apply_single_qubit(const PureState& psi, int n, const Mat2& op) {
  check_qubit_index(psi.n_qubits(), n);
  const std::size_t stride = std::size_t{1} << bit_position(psi.n_qubits(), n);
  Amplitudes out(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i & stride) continue;
    const cplx x0 = out[i];
    const cplx x1 = out[i | stride];
    out[i] = op[0][0] * x0 + op[0][1] * x1;
    out[i | stride] = op[1][0] * x0 + op[1][1] * x1;
  }
  return PureState::from_normalized(psi.n_qubits(), std::move(out), 1e-9);
}

PureState permute_qubits(const PureState& psi, std::span<const int> perm) {
  const int nq = psi.n_qubits();
  if (static_cast<int>(perm.size()) != nq) throw DimensionError("permutation has wrong length");
  std::vector<bool> seen(nq + 1, false);
  for (int t : perm) {
    if (t < 1 || t > nq || seen[t]) throw DimensionError("not a permutation of 1..N");
    seen[t] = true;
  }
  Amplitudes out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    std::size_t j = 0;
    for (int q = 1; q <= nq; ++q) {
      if (i & (std::size_t{1} << bit_position(nq, q))) {
        j |= std::size_t{1} << bit_position(nq, perm[q - 1]);
      }
    }
    out[j] = psi[i];
  }
  return PureState::from_normalized(nq, std::move(out));
}

}  // namespace globent
