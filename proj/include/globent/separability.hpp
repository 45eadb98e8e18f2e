#pragma once

// Product-state detection. psi is a product state iff, for every qubit n,
// the slices u^n and v^n of |psi> = |0>_n u^n + |1>_n v^n are parallel.

#include <optional>
#include <span>
#include <vector>

#include "globent/state.hpp"

namespace globent {

inline constexpr double kDefaultTolerance = 1e-10;

struct SeparabilityVerdict {
  bool is_product = false;
  // Present iff is_product; same convention as factorize().
  std::optional<std::vector<QubitFactor>> factors;
  // max_n D(u^n, v^n) / max(|u^n|^2 |v^n|^2, 1e-30), i.e. the worst sin^2 of
  // the angle between the two slices.
  double residual = 0.0;
};

// D(u, v) = sum_{i<j} |u_i v_j - u_j v_i|^2, evaluated through the Lagrange
// identity |u|^2 |v|^2 - |<u|v>|^2 (clamped at 0). Zero iff u and v are
// parallel, including when either is zero.
double wedge_defect(std::span<const cplx> u, std::span<const cplx> v);

// Scale-free per-qubit defect used by is_product. Zero when either slice
// vanishes.
double normalized_defect(std::span<const cplx> u, std::span<const cplx> v);

SeparabilityVerdict is_product(const PureState& psi, double tol = kDefaultTolerance);

// Single-qubit factors with product_state(factors) == psi within 1e-8.
// Each factor is normalized with b (the |0> amplitude) real and positive, or
// a real and positive when b == 0; the leftover global phase of psi is then
// multiplied into qubit 1. Throws EntangledInput if the verdict is negative.
std::vector<QubitFactor> factorize(const PureState& psi, double tol = kDefaultTolerance);

// Meyer-Wallach Q = (4/N) sum_n D(u^n, v^n).
double meyer_wallach_q(const PureState& psi);

}  // namespace globent
