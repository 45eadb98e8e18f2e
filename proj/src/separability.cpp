#include "globent/separability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "globent/errors.hpp"

namespace globent {

namespace {

constexpr double kDefectFloor = 1e-30;

// Per-qubit factor (a, b) proportional to (<w|v>, <w|u>), where w is the
// larger slice. For a product state u = b * rest and v = a * rest.
QubitFactor slice_factor(const QubitDecomposition& d) {
  const double nu = norm_sq(d.u);
  const double nv = norm_sq(d.v);
  const Amplitudes& w = nu >= nv ? d.u : d.v;
  cplx b = inner(w, d.u);
  cplx a = inner(w, d.v);
  const double scale = std::hypot(std::abs(a), std::abs(b));
  a /= scale;
  b /= scale;
  const cplx anchor = b != cplx{} ? b : a;
  const cplx unphase = std::conj(anchor) / std::abs(anchor);
  return {a * unphase, b * unphase};
}

std::vector<QubitFactor> extract_factors(const PureState& psi) {
  std::vector<QubitFactor> factors;
  factors.reserve(psi.n_qubits());
  for (int n = 1; n <= psi.n_qubits(); ++n) factors.push_back(slice_factor(decompose(psi, n)));

  const cplx overlap = inner(product_state(factors), psi);
  if (std::abs(overlap) > 0.0) {
    const cplx phase = overlap / std::abs(overlap);
    factors.front().a *= phase;
    factors.front().b *= phase;
  }
  return factors;
}

}  // namespace

double wedge_defect(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) {
    throw DimensionError("wedge_defect: lengths " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()) + " differ");
  }
  const double d = norm_sq(u) * norm_sq(v) - std::norm(inner(u, v));
  return std::max(d, 0.0);
}

double normalized_defect(std::span<const cplx> u, std::span<const cplx> v) {
  const double nu = norm_sq(u);
  const double nv = norm_sq(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double d = std::max(nu * nv - std::norm(inner(u, v)), 0.0);
  return d / std::max(nu * nv, kDefectFloor);
}

SeparabilityVerdict is_product(const PureState& psi, double tol) {
  SeparabilityVerdict verdict;
  for (int n = 1; n <= psi.n_qubits(); ++n) {
    const auto d = decompose(psi, n);
    verdict.residual = std::max(verdict.residual, normalized_defect(d.u, d.v));
  }
  verdict.is_product = verdict.residual <= tol;
  if (verdict.is_product) verdict.factors = extract_factors(psi);
  return verdict;
}

std::vector<QubitFactor> factorize(const PureState& psi, double tol) {
  auto verdict = is_product(psi, tol);
  if (!verdict.is_product) {
    throw EntangledInput("state is entangled: slice defect " + std::to_string(verdict.residual) +
                         " exceeds tolerance");
  }
  return std::move(*verdict.factors);
}

double meyer_wallach_q(const PureState& psi) {
  double total = 0.0;
  for (int n = 1; n <= psi.n_qubits(); ++n) {
    const auto d = decompose(psi, n);
    total += wedge_defect(d.u, d.v);
  }
  return 4.0 * total / psi.n_qubits();
}

}  // namespace globent
