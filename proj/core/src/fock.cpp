#include "propertime/fock.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

namespace propertime::fock {

namespace {

constexpr int kDefaultDimCap = 32768;

int read_dim_cap() {
  const char* env = std::getenv("PROPERTIME_DIM_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDimCap;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 2) {
    throw ConfigError("PROPERTIME_DIM_CAP must be an integer >= 2, got '" +
                      std::string(env) + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

int dim_cap() {
  static const int cap = read_dim_cap();
  return cap;
}

FockDim::FockDim(int d) : d_(d) {
  if (d < 2) {
    throw InvalidDimension("Fock dimension must be at least 2, got " +
                           std::to_string(d));
  }
  if (d > dim_cap()) {
    throw InvalidDimension("Fock dimension " + std::to_string(d) +
                           " exceeds the cap " + std::to_string(dim_cap()) +
                           " (PROPERTIME_DIM_CAP)");
  }
}

int tail_start(int dim) {
  int tail_levels = (dim + 9) / 10;
  return dim - tail_levels;
}

double tail_norm(const Vector& amplitudes) {
  const int dim = static_cast<int>(amplitudes.size());
  const int start = tail_start(dim);
  double s = 0.0;
  for (int k = start; k < dim; ++k) s += std::norm(amplitudes[k]);
  return s;
}

Operator::Operator(Matrix m, OperatorKind kind, bool) : m_(std::move(m)), kind_(kind) {}

Operator::Operator(Matrix m, OperatorKind kind) : m_(std::move(m)), kind_(kind) {
  if (m_.rows() != m_.cols()) {
    throw InvalidOperator("operator matrix must be square, got " +
                          std::to_string(m_.rows()) + "x" +
                          std::to_string(m_.cols()));
  }
  if (m_.rows() < 2) {
    throw InvalidDimension("operator dimension must be at least 2");
  }
  constexpr double tol = 1e-12;
  if (kind_ == OperatorKind::hermitian) {
    double defect = hermiticity_defect();
    if (defect > tol) {
      throw InvalidOperator("matrix tagged hermitian has defect " +
                            std::to_string(defect));
    }
  } else if (kind_ == OperatorKind::unitary) {
    double defect = unitarity_defect();
    if (defect > tol) {
      throw InvalidOperator("matrix tagged unitary has defect " +
                            std::to_string(defect));
    }
  }
}

Operator Operator::trusted(Matrix m, OperatorKind kind) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw InvalidOperator("trusted operator matrix must be square, dim >= 2");
  }
  return Operator(std::move(m), kind, true);
}

double Operator::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::unitarity_defect() const {
  Matrix g = m_.adjoint() * m_;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

MotionalState::MotionalState(Vector amplitudes, double norm_tol)
    : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2) {
    throw InvalidDimension("motional state needs at least 2 levels");
  }
  const double n = amps_.norm();
  if (std::abs(n - 1.0) > norm_tol) {
    throw UnphysicalParameters("motional state norm is " + std::to_string(n) +
                               ", expected 1 within " + std::to_string(norm_tol));
  }
  tail_ = tail_norm(amps_);
}

MotionalDensity::MotionalDensity(Matrix rho, double norm_tol)
    : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2) {
    throw InvalidDimension("density matrix must be square, dim >= 2");
  }
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > norm_tol) {
    throw UnphysicalParameters("density matrix hermiticity defect " +
                               std::to_string(herm));
  }
  const complexd tr = rho_.trace();
  if (std::abs(tr - 1.0) > norm_tol) {
    throw UnphysicalParameters("density matrix trace deviates from 1 by " +
                               std::to_string(std::abs(tr - 1.0)));
  }
  const int dim = static_cast<int>(rho_.rows());
  double s = 0.0;
  for (int k = tail_start(dim); k < dim; ++k) s += rho_(k, k).real();
  tail_ = s;
}

double MotionalDensity::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void MotionalDensity::check_positive(double floor) const {
  const double lo = min_eigenvalue();
  if (lo < floor) {
    throw UnphysicalParameters("density matrix has eigenvalue " +
                               std::to_string(lo) + " below " +
                               std::to_string(floor));
  }
}

Operator lowering(FockDim dim) {
  const int d = dim.value();
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator::trusted(std::move(a), OperatorKind::general);
}

Operator raising(FockDim dim) {
  return Operator::trusted(lowering(dim).matrix().adjoint(),
                           OperatorKind::general);
}

Operator number_op(FockDim dim) {
  const int d = dim.value();
  Matrix n = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return Operator::trusted(std::move(n), OperatorKind::hermitian);
}

Operator position(FockDim dim) {
  const Matrix a = lowering(dim).matrix();
  Matrix x = (a + a.adjoint()) / std::sqrt(2.0);
  return Operator::trusted(std::move(x), OperatorKind::hermitian);
}

Operator momentum(FockDim dim) {
  const Matrix a = lowering(dim).matrix();
  Matrix p = complexd(0.0, 1.0) * (a.adjoint() - a) / std::sqrt(2.0);
  return Operator::trusted(std::move(p), OperatorKind::hermitian);
}

HermitianSpectrum::HermitianSpectrum(const Matrix& h, double herm_tol) {
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tol) {
    throw InvalidOperator("matrix passed to HermitianSpectrum has hermiticity defect " +
                          std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw InvalidOperator("eigendecomposition failed");
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Matrix HermitianSpectrum::expm(double t) const {
  const auto phases =
      (complexd(0.0, -t) * evals_.cast<complexd>().array()).exp();
  return evecs_ * phases.matrix().asDiagonal() * evecs_.adjoint();
}

Vector HermitianSpectrum::apply_expm(double t, const Vector& v) const {
  if (v.size() != evecs_.rows()) {
    throw DimensionMismatch("vector length does not match spectrum dimension");
  }
  Vector w = evecs_.adjoint() * v;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    w[k] *= std::exp(complexd(0.0, -t * evals_[k]));
  }
  return evecs_ * w;
}

Operator hermitian_expm(const Operator& h, double t) {
  if (h.kind() != OperatorKind::hermitian && h.hermiticity_defect() > 1e-12) {
    throw InvalidOperator("hermitian_expm needs a hermitian argument");
  }
  HermitianSpectrum spec(h.matrix());
  return Operator::trusted(spec.expm(t), OperatorKind::unitary);
}

Operator squeeze(complexd xi, FockDim dim) {
  const Matrix a = lowering(dim).matrix();
  const Matrix a2 = a * a;
  // (ξ̄a² − ξa†²)/2 is anti-Hermitian, so i times it feeds the Hermitian
  // exponential: exp(M) = exp(−i(iM)).
  Matrix m = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
  HermitianSpectrum spec(complexd(0.0, 1.0) * m);
  return Operator::trusted(spec.expm(1.0), OperatorKind::unitary);
}

Operator displacement_x(double beta, FockDim dim) {
  HermitianSpectrum spec(position(dim).matrix());
  return Operator::trusted(spec.expm(beta), OperatorKind::unitary);
}

MotionalState vacuum(FockDim dim) { return fock_state(0, dim); }

MotionalState fock_state(int n, FockDim dim) {
  if (n < 0 || n >= dim.value()) {
    throw InvalidDimension("Fock level " + std::to_string(n) +
                           " outside dimension " + std::to_string(dim.value()));
  }
  Vector v = Vector::Zero(dim.value());
  v[n] = 1.0;
  return MotionalState(std::move(v));
}

MotionalState squeezed_vacuum(double r, double theta, FockDim dim,
                              double tail_tol) {
  if (r < 0.0) {
    throw UnphysicalParameters("squeezing magnitude must be >= 0, got " +
                               std::to_string(r));
  }
  const int d = dim.value();
  Vector v = Vector::Zero(d);
  const complexd step = -std::polar(std::tanh(r), theta);
  complexd c = 1.0 / std::sqrt(std::cosh(r));
  v[0] = c;
  for (int k = 0; 2 * (k + 1) < d; ++k) {
    c *= step * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0)) / (2.0 * (k + 1.0));
    v[2 * (k + 1)] = c;
  }
  const double discarded = std::max(0.0, 1.0 - v.squaredNorm());
  v.normalize();
  const double tail = tail_norm(v);
  if (tail > tail_tol || discarded > tail_tol) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "squeezed vacuum r=%g does not fit in dim %d (tail %.3g)", r,
                  d, std::max(tail, discarded));
    throw TruncationOverflow(msg,
                             adaptive_dim_squeezed(r, std::min(tail_tol, 1e-12)));
  }
  return MotionalState(std::move(v));
}

MotionalDensity thermal_density(double nbar, FockDim dim) {
  if (nbar < 0.0) {
    throw UnphysicalParameters("thermal occupation must be >= 0, got " +
                               std::to_string(nbar));
  }
  const int d = dim.value();
  Eigen::VectorXd p(d);
  if (nbar == 0.0) {
    p.setZero();
    p[0] = 1.0;
  } else {
    const double q = nbar / (nbar + 1.0);
    double w = 1.0 / (nbar + 1.0);
    for (int k = 0; k < d; ++k) {
      p[k] = w;
      w *= q;
    }
    p /= p.sum();
  }
  Matrix rho = Matrix::Zero(d, d);
  rho.diagonal() = p.cast<complexd>();
  return MotionalDensity(std::move(rho));
}

double thermal_tail_weight(double nbar, int dim) {
  if (nbar <= 0.0) return 0.0;
  return std::pow(nbar / (nbar + 1.0), dim);
}

namespace {

int doubled_dims(int start, double tol, const char* what,
                 bool (*fits)(int dim, double param, double tol), double param) {
  int d = std::max(2, start);
  while (true) {
    if (d > dim_cap()) {
      throw TruncationOverflow(std::string(what) +
                                   " needs more than the dimension cap " +
                                   std::to_string(dim_cap()),
                               d);
    }
    if (fits(d, param, tol)) return d;
    if (d == dim_cap()) {
      throw TruncationOverflow(std::string(what) +
                                   " does not converge at the dimension cap " +
                                   std::to_string(dim_cap()),
                               2 * d);
    }
    d = std::min(2 * d, dim_cap());
  }
}

bool squeezed_fits(int dim, double r, double tol) {
  // Recurrence norms only; no state object, no throwing on the way up.
  const double t2 = std::tanh(r) * std::tanh(r);
  double w = 1.0 / std::cosh(r);
  double total = w;
  double tail = 0.0;
  const int start = tail_start(dim);
  for (int k = 0; 2 * (k + 1) < dim; ++k) {
    w *= t2 * (2.0 * k + 1.0) * (2.0 * k + 2.0) / (4.0 * (k + 1.0) * (k + 1.0));
    total += w;
    if (2 * (k + 1) >= start) tail += w;
  }
  const double discarded = std::max(0.0, 1.0 - total);
  return tail / total <= tol && discarded <= tol;
}

bool thermal_fits(int dim, double nbar, double tol) {
  if (nbar == 0.0) return true;
  const double q = nbar / (nbar + 1.0);
  // Tail of the renormalized geometric distribution plus the discarded weight.
  const double discarded = std::pow(q, dim);
  const double top = (std::pow(q, tail_start(dim)) - discarded) / (1.0 - discarded);
  return top <= tol && discarded <= tol;
}

}  // namespace

int adaptive_dim_squeezed(double r, double tol, int start) {
  if (r < 0.0) throw UnphysicalParameters("squeezing magnitude must be >= 0");
  return doubled_dims(start, tol, "squeezed vacuum", &squeezed_fits, r);
}

int adaptive_dim_thermal(double nbar, double tol, int start) {
  if (nbar < 0.0) throw UnphysicalParameters("thermal occupation must be >= 0");
  return doubled_dims(start, tol, "thermal state", &thermal_fits, nbar);
}

int adaptive_dim_fock(int n, int start) {
  if (n < 0) throw UnphysicalParameters("Fock level must be >= 0");
  int d = std::max(2, start);
  while (n >= tail_start(d)) {
    if (d >= dim_cap()) {
      throw TruncationOverflow("Fock level " + std::to_string(n) +
                                   " does not fit under the dimension cap",
                               2 * d);
    }
    d = std::min(2 * d, dim_cap());
  }
  return d;
}

complexd squeezed_overlap(double r, double phi) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const complexd w = ch * ch - std::polar(1.0, phi) * (sh * sh);
  return 1.0 / std::sqrt(w);
}

complexd expectation(const Matrix& op, const Vector& psi) {
  if (op.rows() != psi.size()) {
    throw DimensionMismatch("operator/state dimension mismatch");
  }
  return psi.dot(op * psi);
}

double mean_occupation(const MotionalState& psi) {
  const Vector& a = psi.amplitudes();
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    s += static_cast<double>(k) * std::norm(a[k]);
  }
  return s;
}

double mean_occupation(const MotionalDensity& rho) {
  double s = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    s += static_cast<double>(k) * rho.matrix()(k, k).real();
  }
  return s;
}

}  // namespace propertime::fock
