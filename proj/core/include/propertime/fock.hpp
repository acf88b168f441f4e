#pragma once

#include <complex>
#include <Eigen/Dense>

#include "propertime/errors.hpp"

// Truncated harmonic-oscillator (Fock) ladder: dimensions, states, densities,
// operator construction, and the few closed forms that belong to the ladder
// algebra itself.
//
// Conventions used throughout the library:
//   a|n⟩ = √n|n−1⟩,  X = (a+a†)/√2,  P = i(a†−a)/√2,  [X,P] = i (interior
//   of the truncation),  S(ξ) = exp[(ξ̄a² − ξa†²)/2] with ξ = r e^{iθ}.
// All matrices are dense and column-major (Eigen defaults).

namespace propertime::fock {

using complexd = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Hard ceiling for truncation dimensions. Defaults to 32768 and can be
// lowered or raised with the PROPERTIME_DIM_CAP environment variable
// (read once per process).
int dim_cap();

// Validated truncation dimension. At least 2 levels, at most dim_cap().
class FockDim {
 public:
  explicit FockDim(int d);
  int value() const { return d_; }
  friend bool operator==(FockDim a, FockDim b) { return a.d_ == b.d_; }

 private:
  int d_;
};

// Number of levels counted as the "tail" of a dim-level ladder: the top 10%,
// at least one level.
int tail_start(int dim);

// Population in the top 10% of levels of an amplitude vector (norm², not
// amplitude).
double tail_norm(const Vector& amplitudes);

enum class OperatorKind { general, hermitian, unitary };

// Dense operator with a kind tag. The checked constructor verifies the tag
// (hermiticity or unitarity to max-norm 1e-12, an O(dim³) test for unitary);
// trusted() skips the check for operators that are correct by construction,
// e.g. products of eigenvector frames with phase diagonals.
class Operator {
 public:
  explicit Operator(Matrix m, OperatorKind kind = OperatorKind::general);
  static Operator trusted(Matrix m, OperatorKind kind);

  const Matrix& matrix() const { return m_; }
  OperatorKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  double hermiticity_defect() const;  // max|M − M†|
  double unitarity_defect() const;    // max|M†M − 1|

 private:
  Operator(Matrix m, OperatorKind kind, bool checked);
  Matrix m_;
  OperatorKind kind_;
};

// Pure motional state, normalized to 1 within norm_tol at construction.
class MotionalState {
 public:
  explicit MotionalState(Vector amplitudes, double norm_tol = 1e-12);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  double tail() const { return tail_; }
  bool converged(double tol) const { return tail_ <= tol; }

 private:
  Vector amps_;
  double tail_;
};

// Mixed motional state. Construction enforces hermiticity and unit trace
// within norm_tol; positivity (eigenvalues ≥ −1e-10) is an O(dim³) check
// exposed separately rather than paid on every construction.
class MotionalDensity {
 public:
  explicit MotionalDensity(Matrix rho, double norm_tol = 1e-12);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double tail() const { return tail_; }  // top-10% trace weight

  double min_eigenvalue() const;
  void check_positive(double floor = -1e-10) const;

 private:
  Matrix rho_;
  double tail_;
};

// Ladder and quadrature operators.
Operator lowering(FockDim dim);   // a
Operator raising(FockDim dim);    // a†
Operator number_op(FockDim dim);  // n̂
Operator position(FockDim dim);   // X
Operator momentum(FockDim dim);   // P

// Reusable eigendecomposition of a Hermitian matrix; expm(t) returns
// exp(−i t H) and apply_expm avoids materializing it.
class HermitianSpectrum {
 public:
  explicit HermitianSpectrum(const Matrix& h, double herm_tol = 1e-12);

  Matrix expm(double t) const;
  Vector apply_expm(double t, const Vector& v) const;
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Matrix& eigenvectors() const { return evecs_; }

 private:
  Eigen::VectorXd evals_;
  Matrix evecs_;
};

// exp(−i t H) for Hermitian h (kind tag or defect < 1e-12 required).
Operator hermitian_expm(const Operator& h, double t);

// S(ξ) = exp[(ξ̄a² − ξa†²)/2]. Real ζ ≥ 0 squeezes X and stretches P.
Operator squeeze(complexd xi, FockDim dim);

// exp(−i β X̂); displaces momentum, β in ground-state-width units.
Operator displacement_x(double beta, FockDim dim);

// Basis states.
MotionalState vacuum(FockDim dim);
MotionalState fock_state(int n, FockDim dim);

// S(r e^{iθ})|0⟩ through the even-level two-term recurrence (no matrix
// exponential). Amplitudes are renormalized after truncation; the state's
// tail() reports what the truncation holds in its top 10%. Throws
// TruncationOverflow when that tail exceeds tail_tol.
MotionalState squeezed_vacuum(double r, double theta, FockDim dim,
                              double tail_tol = 1e-9);

// Geometric thermal state with mean occupation nbar, renormalized over the
// truncation.
MotionalDensity thermal_density(double nbar, FockDim dim);

// Trace weight beyond a dim-level truncation of the untruncated thermal
// state: (nbar/(nbar+1))^dim.
double thermal_tail_weight(double nbar, int dim);

// Smallest dimension (doubling from `start`) whose prepared state has
// top-10% tail below tol. Throws TruncationOverflow at dim_cap().
int adaptive_dim_squeezed(double r, double tol = 1e-12, int start = 128);
int adaptive_dim_thermal(double nbar, double tol = 1e-12, int start = 128);
int adaptive_dim_fock(int n, int start = 128);

// ⟨S(r)0|S(re^{iφ})0⟩ = (cosh²r − e^{iφ} sinh²r)^{−1/2} on the principal
// branch. The radicand's real part is ≥ 1, so the branch cut is never
// approached and the root is continuous in both arguments.
complexd squeezed_overlap(double r, double phi);

complexd expectation(const Matrix& op, const Vector& psi);
double mean_occupation(const MotionalState& psi);
double mean_occupation(const MotionalDensity& rho);

}  // namespace propertime::fock
