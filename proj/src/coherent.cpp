#include "globent/coherent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "compensated_sum.hpp"
#include "globent/errors.hpp"

namespace globent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTolerance = 1e-10;

double wrap_phi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parametrization

CoherentParam CoherentParam::from_tau(cplx tau) {
  if (std::isnan(tau.real()) || std::isnan(tau.imag())) {
    throw std::invalid_argument("tau must not be NaN");
  }
  const double t = std::abs(tau);
  if (std::isinf(t)) return infinity();
  if (t == 0.0) return CoherentParam(cplx{}, false, 0.0, 0.0);
  return CoherentParam(tau, false, 2.0 * std::atan(t), wrap_phi(-std::arg(tau)));
}

CoherentParam CoherentParam::infinity() {
  return CoherentParam(cplx{}, true, std::numbers::pi, 0.0);
}

CoherentParam CoherentParam::from_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  if (theta == std::numbers::pi) return infinity();
  if (theta == 0.0) return CoherentParam(cplx{}, false, 0.0, 0.0);
  const double w = wrap_phi(phi);
  return CoherentParam(std::tan(0.5 * theta) * std::polar(1.0, -w), false, theta, w);
}

CoherentParam CoherentParam::from_bloch(const BlochVector& u) {
  const double len = std::sqrt(u.x * u.x + u.y * u.y + u.z * u.z);
  if (!(std::abs(len - 1.0) <= kUnitTolerance)) {
    throw NormError("Bloch vector must have unit length, got " + std::to_string(len));
  }
  const double rho = std::hypot(u.x, u.y);
  const double theta = std::atan2(rho, -u.z);
  if (rho == 0.0) return u.z > 0.0 ? infinity() : CoherentParam(cplx{}, false, 0.0, 0.0);
  return from_angles(theta, std::atan2(u.y, u.x));
}

cplx CoherentParam::tau() const {
  if (infinite_) throw std::logic_error("tau() called on the point at infinity");
  return tau_;
}

BlochVector CoherentParam::bloch() const {
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), -std::cos(theta_)};
}

ParamConversions param_conversions(const CoherentParam& p) {
  ParamConversions out;
  if (!p.is_infinity()) out.tau = p.tau();
  out.theta = p.theta();
  out.phi = p.phi();
  out.u = p.bloch();
  return out;
}

double tau_relative_error(const CoherentParam& estimate, const CoherentParam& truth) {
  if (estimate.is_infinity() || truth.is_infinity()) {
    return estimate.is_infinity() == truth.is_infinity()
               ? 0.0
               : std::numeric_limits<double>::infinity();
  }
  return std::abs(estimate.tau() - truth.tau()) / std::max(1.0, std::abs(truth.tau()));
}

// ---------------------------------------------------------------------------
// Collective operators

Mat2 CollectiveOp::single_qubit() const {
  const cplx i{0.0, 1.0};
  return {{{-0.5 * axis.z, 0.5 * (axis.x + i * axis.y)},
           {0.5 * (axis.x - i * axis.y), 0.5 * axis.z}}};
}

Amplitudes CollectiveOp::apply_full(std::span<const cplx> amps) const {
  if (amps.size() != dimension(n_qubits)) {
    throw DimensionError("apply_full: vector length does not match 2^N");
  }
  const Mat2 op = single_qubit();
  Amplitudes out(amps.size());
  for (int n = 1; n <= n_qubits; ++n) {
    const std::size_t stride = std::size_t{1} << bit_position(n_qubits, n);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & stride) continue;
      const cplx x0 = amps[i];
      const cplx x1 = amps[i | stride];
      out[i] += op[0][0] * x0 + op[0][1] * x1;
      out[i | stride] += op[1][0] * x0 + op[1][1] * x1;
    }
  }
  return out;
}

CollectiveOp collective_op(int n_qubits, Axis axis) {
  switch (axis) {
    case Axis::X:
      return collective_op(n_qubits, BlochVector{1.0, 0.0, 0.0});
    case Axis::Y:
      return collective_op(n_qubits, BlochVector{0.0, 1.0, 0.0});
    case Axis::Z:
      return collective_op(n_qubits, BlochVector{0.0, 0.0, 1.0});
  }
  throw std::invalid_argument("unknown axis");
}

CollectiveOp collective_op(int n_qubits, const BlochVector& u) {
  check_qubit_count(n_qubits);
  const double len = std::sqrt(u.x * u.x + u.y * u.y + u.z * u.z);
  if (!(std::abs(len - 1.0) <= kUnitTolerance)) {
    throw NormError("collective_op axis must be a unit vector, got length " +
                    std::to_string(len));
  }
  const cplx i{0.0, 1.0};
  const int dim = n_qubits + 1;
  CollectiveOp op{n_qubits, u, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int k = 0; k <= n_qubits; ++k) {
    op.sym_matrix(k, k) = u.z * (k - 0.5 * n_qubits);
    if (k < n_qubits) {
      // <k+1| J_+ |k> = sqrt((k+1)(N-k)); J_x = (J_+ + J_-)/2, J_y = (J_+ - J_-)/2i.
      const double ladder = std::sqrt(static_cast<double>((k + 1) * (n_qubits - k)));
      op.sym_matrix(k + 1, k) = 0.5 * ladder * (u.x - i * u.y);
      op.sym_matrix(k, k + 1) = 0.5 * ladder * (u.x + i * u.y);
    }
  }
  return op;
}

// ---------------------------------------------------------------------------
// Rotations

Mat2 qubit_rotation(double theta, double phi) {
  const cplx i{0.0, 1.0};
  const Mat2 sx{{{0.0, 0.5}, {0.5, 0.0}}};
  const Mat2 sy{{{0.0, 0.5 * i}, {-0.5 * i, 0.0}}};
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Mat2 u{};
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) {
      const cplx g = std::sin(phi) * sx[r][col] - std::cos(phi) * sy[r][col];
      u[r][col] = (r == col ? c : 0.0) - 2.0 * i * s * g;
    }
  }
  return u;
}

PureState rotation_state(int n_qubits, double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    throw std::invalid_argument("phi must lie in [0, 2 pi), got " + std::to_string(phi));
  }
  const Mat2 u = qubit_rotation(theta, phi);
  PureState psi = PureState::basis(n_qubits, 0);
  for (int n = 1; n <= n_qubits; ++n) psi = apply_single_qubit(psi, n, u);
  return psi;
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DimensionError("matrix_exponential needs a square matrix");
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Eigen::MatrixXcd x = a / std::ldexp(1.0, squarings);

  const auto id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd result = id;
  Eigen::MatrixXcd term = id;
  for (int k = 1; k <= 40; ++k) {
    term = (term * x) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Eigen::MatrixXcd sym_rotation_matrix(int n_qubits, double theta, double phi) {
  const cplx i{0.0, 1.0};
  const auto jx = collective_op(n_qubits, Axis::X).sym_matrix;
  const auto jy = collective_op(n_qubits, Axis::Y).sym_matrix;
  const Eigen::MatrixXcd generator = std::sin(phi) * jx - std::cos(phi) * jy;
  return matrix_exponential(-i * theta * generator);
}

// ---------------------------------------------------------------------------
// Coherent states

std::vector<cplx> coherent_dicke_amplitudes(int n_qubits, const CoherentParam& p) {
  check_qubit_count(n_qubits);
  std::vector<cplx> d(n_qubits + 1);
  if (p.is_infinity()) {
    d.back() = 1.0;
    return d;
  }
  const cplx tau = p.tau();
  const double t = std::abs(tau);
  if (t == 0.0) {
    d.front() = 1.0;
    return d;
  }
  const double arg = std::arg(tau);
  const double half_n = 0.5 * n_qubits;
  for (int k = 0; k <= n_qubits; ++k) {
    double mag;
    if (t <= 1.0) {
      mag = std::pow(t, k) * std::exp(-half_n * std::log1p(t * t));
    } else {
      mag = std::exp((k - n_qubits) * std::log(t) - half_n * std::log1p(1.0 / (t * t)));
    }
    d[k] = std::sqrt(binomial(n_qubits, k)) * mag * std::polar(1.0, k * arg);
  }
  return d;
}

PureState coherent_from_dicke(int n_qubits, const CoherentParam& p) {
  const auto d = coherent_dicke_amplitudes(n_qubits, p);
  return SymCoeffs::from_dicke_amplitudes(n_qubits, d).to_state();
}

PureState coherent_from_tau(int n_qubits, const CoherentParam& p) {
  check_qubit_count(n_qubits);
  if (p.is_infinity()) return PureState::basis(n_qubits, dimension(n_qubits) - 1);
  const cplx tau = p.tau();
  const double h = std::hypot(1.0, std::abs(tau));
  const std::vector<QubitFactor> factors(n_qubits, QubitFactor{tau / h, 1.0 / h});
  return product_state(factors);
}

double eigen_residual(const CoherentParam& p, int n_qubits) {
  const PureState psi = coherent_from_tau(n_qubits, p);
  const auto ju = collective_op(n_qubits, p.bloch()).apply_full(psi.amplitudes());
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < psi.dim(); ++i) s.add(std::norm(ju[i] - 0.5 * n_qubits * psi[i]));
  return std::sqrt(s.value());
}

CoherentFit fit_coherent(const SymCoeffs& coeffs, double tol) {
  const int nq = coeffs.n_qubits;
  check_qubit_count(nq);
  if (static_cast<int>(coeffs.c.size()) != nq + 1) {
    throw DimensionError("SymCoeffs must hold N + 1 coefficients");
  }
  const double scale = std::sqrt(coeffs.norm_sq());
  if (!(scale > 0.0) || !std::isfinite(scale)) throw NormError("fit_coherent: zero coefficients");
  std::vector<cplx> c(coeffs.c);
  for (auto& z : c) z /= scale;

  // <l0|l0>, <l1|l1>, <l0|l1> with l0 = sum_k c_k |N-1,k>, l1 = sum_k c_{k+1} |N-1,k>.
  detail::CompensatedSum l0;
  detail::CompensatedSum l1;
  detail::CompensatedComplexSum x;
  for (int k = 0; k < nq; ++k) {
    const double w = binomial(nq - 1, k);
    l0.add(w * std::norm(c[k]));
    l1.add(w * std::norm(c[k + 1]));
    x.add(w * std::conj(c[k]) * c[k + 1]);
  }

  CoherentFit fit;
  if (l0.value() >= l1.value()) {
    fit.param = CoherentParam::from_tau(x.value() / l0.value());
  } else {
    const cplx sigma = std::conj(x.value()) / l1.value();
    fit.param = sigma == cplx{} ? CoherentParam::infinity() : CoherentParam::from_tau(1.0 / sigma);
  }

  const auto e = coherent_dicke_amplitudes(nq, fit.param);
  std::vector<cplx> d(nq + 1);
  detail::CompensatedComplexSum overlap;
  for (int k = 0; k <= nq; ++k) {
    d[k] = std::sqrt(binomial(nq, k)) * c[k];
    overlap.add(std::conj(e[k]) * d[k]);
  }
  const cplx lambda = overlap.value();
  detail::CompensatedSum r;
  for (int k = 0; k <= nq; ++k) r.add(std::norm(d[k] - lambda * e[k]));
  fit.residual = std::sqrt(r.value());
  fit.is_coherent = fit.residual <= tol;
  return fit;
}

}  // namespace globent
