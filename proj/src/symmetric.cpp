#include "globent/symmetric.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "compensated_sum.hpp"
#include "globent/errors.hpp"

namespace globent {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

DickeIndex::DickeIndex(int n_qubits, int k) : n_qubits_(n_qubits), k_(k) {
  check_qubit_count(n_qubits);
  if (k < 0 || k > n_qubits) {
    throw DimensionError("Dicke index k = " + std::to_string(k) + " outside 0.." +
                         std::to_string(n_qubits));
  }
}

double SymCoeffs::norm_sq() const {
  double s = 0.0;
  for (int k = 0; k <= n_qubits; ++k) s += binomial(n_qubits, k) * std::norm(c[k]);
  return s;
}

std::vector<cplx> SymCoeffs::dicke_amplitudes() const {
  std::vector<cplx> d(c.size());
  for (int k = 0; k <= n_qubits; ++k) d[k] = std::sqrt(binomial(n_qubits, k)) * c[k];
  return d;
}

SymCoeffs SymCoeffs::from_dicke_amplitudes(int n_qubits, std::span<const cplx> d) {
  if (static_cast<int>(d.size()) != n_qubits + 1) {
    throw DimensionError("expected " + std::to_string(n_qubits + 1) + " Dicke amplitudes");
  }
  SymCoeffs out{n_qubits, std::vector<cplx>(d.size())};
  for (int k = 0; k <= n_qubits; ++k) out.c[k] = d[k] / std::sqrt(binomial(n_qubits, k));
  return out;
}

Amplitudes SymCoeffs::to_amplitudes() const {
  if (static_cast<int>(c.size()) != n_qubits + 1) {
    throw DimensionError("SymCoeffs must hold N + 1 coefficients");
  }
  Amplitudes amps(dimension(n_qubits));
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = c[std::popcount(i)];
  return amps;
}

PureState SymCoeffs::to_state() const { return PureState::from_amplitudes(n_qubits, to_amplitudes()); }

Amplitudes unnormalized_sym(const DickeIndex& idx) {
  Amplitudes amps(dimension(idx.n_qubits()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::popcount(i) == idx.k()) amps[i] = 1.0;
  }
  return amps;
}

PureState dicke_state(const DickeIndex& idx) {
  const double amp = 1.0 / std::sqrt(binomial(idx.n_qubits(), idx.k()));
  Amplitudes amps(dimension(idx.n_qubits()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (std::popcount(i) == idx.k()) amps[i] = amp;
  }
  return PureState::from_normalized(idx.n_qubits(), std::move(amps));
}

std::pair<Amplitudes, Amplitudes> recurrence_split(const DickeIndex& idx, int n) {
  const int nq = idx.n_qubits();
  if (nq < 2) throw DimensionError("recurrence_split needs N >= 2");
  if (n < 1 || n > nq) {
    throw DimensionError("qubit index " + std::to_string(n) + " out of range 1.." +
                         std::to_string(nq));
  }
  const auto sub = [nq](int k) {
    if (k < 0 || k > nq - 1) return Amplitudes(dimension(nq - 1));
    return unnormalized_sym(DickeIndex(nq - 1, k));
  };
  return {sub(idx.k()), sub(idx.k() - 1)};
}

SymProjection project_symmetric(std::span<const cplx> amps, int n_qubits) {
  if (amps.size() != dimension(n_qubits)) {
    throw DimensionError("project_symmetric: length does not match 2^N");
  }
  std::vector<detail::CompensatedComplexSum> buckets(n_qubits + 1);
  for (std::size_t i = 0; i < amps.size(); ++i) buckets[std::popcount(i)].add(amps[i]);

  SymProjection p;
  p.coeffs.n_qubits = n_qubits;
  p.coeffs.c.resize(n_qubits + 1);
  p.dicke_overlaps.resize(n_qubits + 1);
  double norm2 = 0.0;
  for (int k = 0; k <= n_qubits; ++k) {
    const double b = binomial(n_qubits, k);
    const cplx total = buckets[k].value();
    p.coeffs.c[k] = total / b;
    p.dicke_overlaps[k] = total / std::sqrt(b);
    norm2 += std::norm(p.dicke_overlaps[k]);
  }
  p.norm_in_s = std::sqrt(norm2);
  p.sym_part = p.coeffs.to_amplitudes();
  return p;
}

SymProjection project_symmetric(const PureState& psi) {
  return project_symmetric(psi.amplitudes(), psi.n_qubits());
}

double distance_from_symmetric(const PureState& psi) {
  const auto p = project_symmetric(psi);
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < psi.dim(); ++i) s.add(std::norm(psi[i] - p.sym_part[i]));
  return std::sqrt(s.value());
}

SymCoeffs to_sym_coeffs(const PureState& psi, double tol) {
  const double dist = distance_from_symmetric(psi);
  if (!(dist <= tol)) {
    throw NotSymmetric("state is not in the symmetric subspace: distance " +
                       std::to_string(dist));
  }
  return project_symmetric(psi).coeffs;
}

SymCoeffs lowering_map(const SymCoeffs& coeffs, int bit) {
  if (coeffs.n_qubits < 2) throw DimensionError("lowering_map needs N >= 2");
  if (bit != 0 && bit != 1) throw std::invalid_argument("lowering_map bit must be 0 or 1");
  if (static_cast<int>(coeffs.c.size()) != coeffs.n_qubits + 1) {
    throw DimensionError("SymCoeffs must hold N + 1 coefficients");
  }
  SymCoeffs out{coeffs.n_qubits - 1, {}};
  out.c.assign(coeffs.c.begin() + bit, coeffs.c.end() - (1 - bit));
  return out;
}

PureState random_symmetric(int n_qubits, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> d(n_qubits + 1);
  for (auto& z : d) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  return SymCoeffs::from_dicke_amplitudes(n_qubits, d).to_state();
}

PureState random_orthogonal(int n_qubits, std::uint64_t seed) {
  check_qubit_count(n_qubits);
  if (n_qubits < 2) throw DimensionError("S-perp is trivial for a single qubit");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Amplitudes amps(dimension(n_qubits));
  for (;;) {
    for (auto& z : amps) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z = {re, im};
    }
    const double before = std::sqrt(norm_sq(amps));
    // Two passes: the second removes what rounding left of the S component.
    for (int pass = 0; pass < 2; ++pass) {
      const auto p = project_symmetric(amps, n_qubits);
      for (std::size_t i = 0; i < amps.size(); ++i) amps[i] -= p.sym_part[i];
    }
    if (std::sqrt(norm_sq(amps)) >= 1e-6 * before) break;
  }
  return PureState::from_amplitudes(n_qubits, std::move(amps));
}

}  // namespace globent
