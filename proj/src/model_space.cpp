#include "atto/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace atto {

std::vector<Complex> ordered_zeros(const InnerFunction& theta) {
  auto zeros = theta.zeros();
  std::stable_sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12) return ma < mb;
    const double pa = ma == 0.0 ? 0.0 : std::arg(a);
    const double pb = mb == 0.0 ? 0.0 : std::arg(b);
    if (std::abs(pa - pb) > 1e-12) return pa < pb;
    return false;
  });
  return zeros;
}

ModelSpace ModelSpace::build(const InnerFunction& theta, std::size_t grid_size) {
  if (theta.is_constant()) {
    throw Error(ErrorKind::ConstantInner, "model space of a constant inner function is {0}");
  }
  const std::size_t m = grid_size == 0 ? select_grid_size({theta}) : grid_size;
  ModelSpace space;
  space.theta_ = theta;
  space.ordered_zeros_ = atto::ordered_zeros(theta);
  space.theta0_ = theta.at_zero();
  const auto n = static_cast<Eigen::Index>(space.ordered_zeros_.size());
  space.basis_.resize(static_cast<Eigen::Index>(m), n);
  for (std::size_t j = 0; j < m; ++j) {
    space.basis_.row(static_cast<Eigen::Index>(j)) = space.basis_values(grid_point(m, j)).transpose();
  }
  space.theta_samples_ = GridFunction::from_inner(m, theta);

  const auto one = GridFunction::constant(m, 1.0);
  const auto z = identity_function(m);
  space.kernels_.k0 = space.project(one - std::conj(space.theta0_) * space.theta_samples_);
  space.kernels_.k0_tilde = space.project(z.conj() * (space.theta_samples_ - one * space.theta0_));

  space.conjugation_.matrix.resize(n, n);
  space.shift_.shift.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto e = space.basis(static_cast<std::size_t>(k));
    space.conjugation_.matrix.col(k) = space.project(space.theta_samples_ * z.conj() * e.conj());
    space.shift_.shift.col(k) = space.project(z * e);
  }
  space.shift_.adjoint = space.shift_.shift.adjoint();
  return space;
}

GridFunction ModelSpace::basis(std::size_t k) const {
  return GridFunction(basis_.col(static_cast<Eigen::Index>(k)));
}

Vector ModelSpace::project(const GridFunction& f) const {
  if (f.size() != grid_size()) {
    throw Error(ErrorKind::GridMismatch, "function and model space use different grids");
  }
  return basis_.adjoint() * f.samples() / static_cast<double>(grid_size());
}

GridFunction ModelSpace::synthesize(const Vector& c) const {
  if (c.size() != basis_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector has the wrong length");
  }
  return GridFunction(basis_ * c);
}

Vector ModelSpace::basis_values(Complex z) const {
  Vector values(static_cast<Eigen::Index>(ordered_zeros_.size()));
  Complex product{1.0, 0.0};
  for (std::size_t k = 0; k < ordered_zeros_.size(); ++k) {
    const auto a = ordered_zeros_[k];
    const auto denominator = 1.0 - std::conj(a) * z;
    values[static_cast<Eigen::Index>(k)] = std::sqrt(1.0 - std::norm(a)) / denominator * product;
    product *= (z - a) / denominator;
  }
  return values;
}

Complex ModelSpace::evaluate(const Vector& c, Complex z) const {
  if (c.size() != basis_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector has the wrong length");
  }
  return basis_values(z).transpose() * c;
}

double ModelSpace::residual(const GridFunction& f) const {
  const auto r = f - synthesize(project(f));
  return r.l2_norm() / std::max(f.l2_norm(), 1e-300);
}

Vector ModelSpace::kernel_at(Complex lambda) const {
  if (!(std::abs(lambda) < 1.0)) {
    throw Error(ErrorKind::OutsideDisk, "reproducing kernels exist only inside the disk");
  }
  return basis_values(lambda).conjugate();
}

GridFunction SpacePair::quotient_samples() const {
  return GridFunction::from_inner(grid_size(), quotient);
}

SpacePair SpacePair::build(const InnerFunction& theta, const InnerFunction& alpha,
                           std::size_t extra_degree, std::size_t grid_size) {
  if (theta.is_constant() || alpha.is_constant()) {
    throw Error(ErrorKind::ConstantInner, "theta and alpha must be nonconstant");
  }
  if (!divides(alpha, theta)) {
    throw Error(ErrorKind::NotDivisible, "alpha does not divide theta");
  }
  const std::size_t m =
      grid_size == 0 ? select_grid_size({theta, alpha}, extra_degree) : grid_size;
  SpacePair pair;
  pair.theta = theta;
  pair.alpha = alpha;
  pair.quotient = atto::quotient(theta, alpha);
  pair.theta_space = ModelSpace::build(theta, m);
  pair.alpha_space = ModelSpace::build(alpha, m);
  if (!pair.quotient.is_constant()) pair.quotient_space = ModelSpace::build(pair.quotient, m);
  pair.theta0 = pair.theta_space.theta_at_zero();
  pair.alpha0 = pair.alpha_space.theta_at_zero();
  pair.quotient0 = pair.quotient.at_zero();

  const auto& bt = pair.theta_space.basis_samples();
  const auto& ba = pair.alpha_space.basis_samples();
  const double scale = 1.0 / static_cast<double>(m);
  const auto& alpha_s = pair.alpha_space.theta_samples().samples();
  const auto q_s = pair.quotient_samples().samples();
  pair.inclusion = bt.adjoint() * ba * scale;
  pair.quotient_times_alpha = bt.adjoint() * (q_s.asDiagonal() * ba) * scale;
  if (pair.quotient_space) {
    const auto& bq = pair.quotient_space->basis_samples();
    pair.quotient_inclusion = bt.adjoint() * bq * scale;
    pair.alpha_times_quotient = bt.adjoint() * (alpha_s.asDiagonal() * bq) * scale;
  } else {
    pair.quotient_inclusion = Matrix(bt.cols(), 0);
    pair.alpha_times_quotient = Matrix(bt.cols(), 0);
  }
  return pair;
}

AlphaSplit decompose(const SpacePair& pair, const Vector& f) {
  if (f.size() != static_cast<Eigen::Index>(pair.theta_space.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "vector is not in K_theta coordinates");
  }
  return {pair.inclusion.adjoint() * f, pair.alpha_times_quotient.adjoint() * f};
}

QuotientSplit decompose_quotient_first(const SpacePair& pair, const Vector& f) {
  if (f.size() != static_cast<Eigen::Index>(pair.theta_space.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "vector is not in K_theta coordinates");
  }
  return {pair.quotient_inclusion.adjoint() * f, pair.quotient_times_alpha.adjoint() * f};
}

}  // namespace atto
