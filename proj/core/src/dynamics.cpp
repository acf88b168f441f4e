#include "propertime/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

namespace propertime::dynamics {

namespace {

Vector diag_phases(const Eigen::VectorXd& freqs, double t) {
  Vector ph(freqs.size());
  for (Eigen::Index k = 0; k < freqs.size(); ++k) {
    ph[k] = std::exp(complexd(0.0, -t * freqs[k]));
  }
  return ph;
}

}  // namespace

BlockHamiltonian::BlockHamiltonian(const ClockParams& params,
                                   fock::FockDim dim) {
  const int d = dim.value();
  ratio_ = params.ratio();
  h_g_ = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) h_g_(n, n) = n + 0.5;
  const Matrix p = fock::momentum(dim).matrix();
  h_e_rot_ = h_g_ - (params.eps_c() / 2.0) * (p * p);
}

Matrix BlockHamiltonian::excited_lab() const {
  Matrix h = h_e_rot_;
  h.diagonal().array() += ratio_;
  return h;
}

Matrix BlockHamiltonian::full(Frame frame) const {
  const int d = dim();
  Matrix h = Matrix::Zero(2 * d, 2 * d);
  h.topLeftCorner(d, d) = h_g_;
  h.bottomRightCorner(d, d) =
      frame == Frame::lab ? excited_lab() : h_e_rot_;
  return h;
}

Propagators::Propagators(const ClockParams& params, fock::FockDim dim,
                         Variant variant)
    : params_(params), dim_(dim.value()), variant_(variant) {
  const double eps_c = params.eps_c();
  zeta_ = -std::log1p(-eps_c) / 4.0;
  lambda_ = std::sqrt(1.0 - eps_c);
  half_levels_.resize(dim_);
  for (int n = 0; n < dim_; ++n) half_levels_[n] = n + 0.5;

  switch (variant_) {
    case Variant::oracle: {
      BlockHamiltonian h(params, dim);
      oracle_ = std::make_unique<fock::HermitianSpectrum>(h.excited_rotating());
      break;
    }
    case Variant::exact:
      squeeze_ = fock::squeeze(zeta_, dim).matrix();
      break;
    case Variant::diagonal_sods:
      break;
    case Variant::perturbative: {
      const Matrix a = fock::lowering(dim).matrix();
      const Matrix a2 = a * a;
      q_ = a2.adjoint() - a2;
      break;
    }
  }
}

Vector Propagators::apply_g(double omega_t, const Vector& v) const {
  if (v.size() != dim_) {
    throw DimensionMismatch("state dimension does not match propagators");
  }
  return diag_phases(half_levels_, omega_t).cwiseProduct(v);
}

Vector Propagators::apply_e(double omega_t, const Vector& v) const {
  if (v.size() != dim_) {
    throw DimensionMismatch("state dimension does not match propagators");
  }
  const double eps_c = params_.eps_c();
  switch (variant_) {
    case Variant::oracle:
      return oracle_->apply_expm(omega_t, v);
    case Variant::exact: {
      Vector w = squeeze_.adjoint() * v;
      w = diag_phases(half_levels_, lambda_ * omega_t).cwiseProduct(w);
      return squeeze_ * w;
    }
    case Variant::diagonal_sods: {
      Vector w(dim_);
      for (int n = 0; n < dim_; ++n) {
        const double phase = -omega_t * (n + 0.5) +
                             eps_c * omega_t * (2.0 * n + 1.0) / 4.0;
        w[n] = std::exp(complexd(0.0, phase)) * v[n];
      }
      return w;
    }
    case Variant::perturbative: {
      const Vector ph = diag_phases(half_levels_, lambda_ * omega_t);
      const Vector ev = ph.cwiseProduct(v);
      const Vector qv = q_ * v;
      return ev + (eps_c / 8.0) * (ph.cwiseProduct(qv) - q_ * ev);
    }
  }
  throw InvalidOperator("unknown propagator variant");
}

PropagatorSet Propagators::at(double omega_t) const {
  Matrix id = Matrix::Identity(dim_, dim_);
  Matrix ug = diag_phases(half_levels_, omega_t).asDiagonal();
  Matrix ue(dim_, dim_);
  for (int c = 0; c < dim_; ++c) {
    ue.col(c) = apply_e(omega_t, id.col(c));
  }
  double defect = 0.0;
  fock::OperatorKind e_kind = fock::OperatorKind::unitary;
  if (variant_ == Variant::perturbative) {
    Matrix g = ue.adjoint() * ue;
    g.diagonal().array() -= 1.0;
    defect = g.cwiseAbs().maxCoeff();
    e_kind = fock::OperatorKind::general;
  }
  return PropagatorSet{fock::Operator::trusted(std::move(ug),
                                               fock::OperatorKind::unitary),
                       fock::Operator::trusted(std::move(ue), e_kind),
                       omega_t,
                       variant_,
                       zeta_,
                       lambda_,
                       defect};
}

CompositeState ramsey_initial(const fock::MotionalState& prep, Frame frame) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CompositeState s;
  s.block_g = prep.amplitudes() * inv_sqrt2;
  s.block_e = prep.amplitudes() * inv_sqrt2;
  s.frame = frame;
  s.omega_t = 0.0;
  return s;
}

CompositeState evolve(const CompositeState& state, const Propagators& props,
                      double omega_t_target, double lab_carrier_delta) {
  if (state.block_g.size() != props.dim() ||
      state.block_e.size() != props.dim()) {
    throw DimensionMismatch("composite state does not match propagators");
  }
  const double dt = omega_t_target - state.omega_t;
  CompositeState out;
  out.block_g = props.apply_g(dt, state.block_g);
  out.block_e = props.apply_e(dt, state.block_e);
  if (state.frame == Frame::lab) {
    out.block_e *= std::exp(complexd(0.0, -lab_carrier_delta));
  }
  out.frame = state.frame;
  out.omega_t = omega_t_target;
  return out;
}

ClockReducedState reduce_to_clock(const CompositeState& state) {
  const double ng = state.block_g.squaredNorm();
  const double ne = state.block_e.squaredNorm();
  const double total = ng + ne;
  if (!(total > 0.0)) {
    throw UnphysicalParameters("composite state has zero norm");
  }
  ClockReducedState r;
  const complexd eg = state.block_g.dot(state.block_e) / total;
  r.rho << complexd(ng / total), std::conj(eg), eg, complexd(ne / total);
  r.rho_eg = eg;
  r.visibility = std::clamp(2.0 * std::abs(eg), 0.0, 1.0);
  r.phase = r.visibility > 0.0 ? std::arg(eg) : 0.0;
  r.purity = (ng * ng + ne * ne) / (total * total) + 2.0 * std::norm(eg);
  return r;
}

namespace {

ClockReducedState reduced_from_mixed(complexd eg_sum) {
  ClockReducedState r;
  const complexd eg = 0.5 * eg_sum;
  r.rho << complexd(0.5), std::conj(eg), eg, complexd(0.5);
  r.rho_eg = eg;
  r.visibility = std::clamp(2.0 * std::abs(eg), 0.0, 1.0);
  r.phase = r.visibility > 0.0 ? std::arg(eg) : 0.0;
  r.purity = 0.5 + 2.0 * std::norm(eg);
  return r;
}

}  // namespace

ClockReducedState mixed_state_evolution(const fock::MotionalDensity& rho_m,
                                        const Propagators& props,
                                        double omega_t, MixedPath path,
                                        double tail_tol) {
  if (rho_m.dim() != props.dim()) {
    throw DimensionMismatch("density dimension does not match propagators");
  }
  if (rho_m.tail() > tail_tol) {
    throw TruncationOverflow(
        "mixed-state tail weight " + std::to_string(rho_m.tail()) +
            " exceeds tolerance; increase the dimension",
        2 * rho_m.dim());
  }

  if (path == MixedPath::full_density) {
    PropagatorSet set = props.at(omega_t);
    // ⟨e|ρ_clock|g⟩ = Tr(U_e ρ_m U_g†)/2 for the balanced superposition.
    const complexd tr =
        (set.u_e.matrix() * rho_m.matrix() * set.u_g.matrix().adjoint())
            .trace();
    return reduced_from_mixed(tr);
  }

  const int d = rho_m.dim();
  const double offdiag =
      (rho_m.matrix() - Matrix(rho_m.matrix().diagonal().asDiagonal()))
          .cwiseAbs()
          .maxCoeff();

  constexpr double kDrop = 1e-15;  // cumulative ensemble weight allowed out
  complexd eg_sum = 0.0;

  if (offdiag < 1e-14) {
    // Diagonal mixture: Fock states are the eigenbasis. Walk levels in order
    // and stop once the remaining weight cannot matter.
    Eigen::VectorXd w(d);
    for (int k = 0; k < d; ++k) w[k] = rho_m.matrix()(k, k).real();
    Eigen::VectorXd suffix(d + 1);
    suffix[d] = 0.0;
    for (int k = d - 1; k >= 0; --k) suffix[k] = suffix[k + 1] + w[k];
    Vector basis = Vector::Zero(d);
    for (int k = 0; k < d; ++k) {
      if (suffix[k] < kDrop) break;
      basis[k] = 1.0;
      const Vector vg = props.apply_g(omega_t, basis);
      const Vector ve = props.apply_e(omega_t, basis);
      basis[k] = 0.0;
      eg_sum += w[k] * vg.dot(ve);
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_m.matrix());
    const Eigen::VectorXd& w = es.eigenvalues();
    // Eigen sorts ascending; accumulate from the largest weight down and stop
    // once the remaining weight (bounded by w[j]·(j+1)) cannot matter.
    for (int j = d - 1; j >= 0; --j) {
      if (w[j] <= 0.0 || w[j] * (j + 1) < kDrop) break;
      const Vector v = es.eigenvectors().col(j);
      const Vector vg = props.apply_g(omega_t, v);
      const Vector ve = props.apply_e(omega_t, v);
      eg_sum += w[j] * vg.dot(ve);
    }
  }
  return reduced_from_mixed(eg_sum);
}

}  // namespace propertime::dynamics
