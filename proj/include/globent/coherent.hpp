#pragma once

// Atomic (SU(2)) coherent states of N qubits.
//
// Spin operators act per qubit as
//   S_x = (|1><0| + |0><1|)/2,  S_y = (|1><0| - |0><1|)/(2i),
//   S_z = (|1><1| - |0><0|)/2,
// so |0...0> is the J_z eigenstate with m = -N/2. A point on the Bloch
// sphere has polar angle theta measured from the NEGATIVE z axis and
// azimuth phi from the positive x axis:
//   u = (sin(theta) cos(phi), sin(theta) sin(phi), -cos(theta)),
// with stereographic coordinate tau = tan(theta/2) e^{-i phi}. tau = 0 is
// u = -z (the state |0...0>), tau = infinity is u = +z (|1...1>).

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "globent/state.hpp"
#include "globent/symmetric.hpp"

namespace globent {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

class CoherentParam {
 public:
  static CoherentParam from_tau(cplx tau);
  static CoherentParam infinity();
  // theta in [0, pi]; phi is wrapped into [0, 2 pi) and set to 0 at the poles.
  static CoherentParam from_angles(double theta, double phi);
  // Requires a unit vector (within 1e-10).
  static CoherentParam from_bloch(const BlochVector& u);

  bool is_infinity() const noexcept { return infinite_; }
  // Precondition: !is_infinity().
  cplx tau() const;
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  BlochVector bloch() const;

 private:
  CoherentParam(cplx tau, bool infinite, double theta, double phi)
      : tau_(tau), infinite_(infinite), theta_(theta), phi_(phi) {}

  cplx tau_;
  bool infinite_;
  double theta_;
  double phi_;
};

struct ParamConversions {
  std::optional<cplx> tau;  // empty at infinity
  double theta = 0.0;
  double phi = 0.0;
  BlochVector u;
};

ParamConversions param_conversions(const CoherentParam& p);

// |tau_est - tau_true| / max(1, |tau_true|); 0 when both are infinite and
// +inf when exactly one is.
double tau_relative_error(const CoherentParam& estimate, const CoherentParam& truth);

enum class Axis { X, Y, Z };

// J . u = sum_n (u . S)_n, stored as its (N+1)x(N+1) matrix on the Dicke
// basis (index k = number of ones, m = k - N/2).
struct CollectiveOp {
  int n_qubits = 0;
  BlochVector axis;
  Eigen::MatrixXcd sym_matrix;

  // (u . S) on one qubit, basis order (|0>, |1>).
  Mat2 single_qubit() const;
  // Full-space action as a sum of single-qubit terms; O(N 2^N).
  Amplitudes apply_full(std::span<const cplx> amps) const;
};

CollectiveOp collective_op(int n_qubits, Axis axis);
// Throws NormError unless |u| = 1 within 1e-10.
CollectiveOp collective_op(int n_qubits, const BlochVector& u);

// exp(-i theta (S_x sin(phi) - S_y cos(phi))) in closed form:
// cos(theta/2) I - 2i sin(theta/2) (S_x sin(phi) - S_y cos(phi)).
Mat2 qubit_rotation(double theta, double phi);

// R_{theta,phi} |0...0>, applied as the same single-qubit rotation on every
// qubit. Requires theta in [0, pi] and phi in [0, 2 pi).
PureState rotation_state(int n_qubits, double theta, double phi);

// Dense matrix exponential by scaling and squaring with a Taylor core.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

// R_{theta,phi} restricted to S, as exp of the (N+1)x(N+1) generator.
Eigen::MatrixXcd sym_rotation_matrix(int n_qubits, double theta, double phi);

// Dicke-basis amplitudes binom(N,k)^(1/2) tau^k (1+|tau|^2)^(-N/2). For
// |tau| > 1 the magnitude is evaluated in log space as
// exp((k-N) ln|tau| - (N/2) log1p(|tau|^-2)).
std::vector<cplx> coherent_dicke_amplitudes(int n_qubits, const CoherentParam& p);

// The same state assembled from the Dicke expansion.
PureState coherent_from_dicke(int n_qubits, const CoherentParam& p);

// Closed product form (1+|tau|^2)^(-N/2) (|0> + tau|1>)^{(x)N}; |1...1> at
// infinity.
PureState coherent_from_tau(int n_qubits, const CoherentParam& p);

// || (J.u - N/2) |tau_u> ||
double eigen_residual(const CoherentParam& p, int n_qubits);

struct CoherentFit {
  bool is_coherent = false;
  CoherentParam param = CoherentParam::from_tau(0.0);  // best fit either way
  double residual = 0.0;  // distance of the normalized input from the fitted ray
};

// Tests whether c_k = tau^k c_0 (or c_k = 0 for k < N at tau = infinity).
// tau is the least-squares ratio between the two lowering maps l(1) ~ tau
// l(0), taken in whichever direction has the larger anchor (l(0) for
// |tau| <= 1, l(1) otherwise, inverted). Scale-free: the input is
// normalized first. Throws NormError on a zero input.
CoherentFit fit_coherent(const SymCoeffs& coeffs, double tol = 1e-10);

}  // namespace globent
