#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "atto/hardy_grid.hpp"
#include "atto/inner_function.hpp"
#include "atto/types.hpp"

namespace atto {

struct KernelVectors {
  Vector k0;        // 1 - conj(theta(0)) theta
  Vector k0_tilde;  // conj(z) (theta - theta(0))
};

/// An antilinear map carried as coeffs(C f) = matrix * conj(coeffs(f)).
struct AntilinearMap {
  Matrix matrix;

  Vector operator()(const Vector& c) const { return matrix * c.conjugate(); }
  /// C1 after C2 is the linear map J1 conj(J2).
  Matrix compose(const AntilinearMap& inner) const { return matrix * inner.matrix.conjugate(); }
};

struct ShiftPair {
  Matrix shift;    // f -> P_theta(z f)
  Matrix adjoint;  // f -> conj(z)(f - f(0))
};

/// K^2_theta = H^2 (-) theta H^2 in the Takenaka-Malmquist basis
///   e_k = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z - a_j)/(1 - conj(a_j) z),
/// which is exactly {1, z, ..., z^{n-1}} for theta = z^n.
class ModelSpace {
public:
  /// grid_size = 0 selects a grid from theta alone.
  static ModelSpace build(const InnerFunction& theta, std::size_t grid_size = 0);

  const InnerFunction& theta() const noexcept { return theta_; }
  std::size_t dim() const noexcept { return ordered_zeros_.size(); }
  std::size_t grid_size() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
  const std::vector<Complex>& ordered_zeros() const noexcept { return ordered_zeros_; }
  Complex theta_at_zero() const noexcept { return theta0_; }

  /// M x dim matrix of basis samples.
  const Matrix& basis_samples() const noexcept { return basis_; }
  GridFunction basis(std::size_t k) const;
  const GridFunction& theta_samples() const noexcept { return theta_samples_; }

  /// Coefficients <f, e_k> of P_theta f.
  Vector project(const GridFunction& f) const;
  GridFunction synthesize(const Vector& c) const;
  /// Evaluates sum c_k e_k at a point of the closed disk from the closed form.
  Complex evaluate(const Vector& c, Complex z) const;
  /// e_k(z) for all k.
  Vector basis_values(Complex z) const;
  /// ||f - P_theta f|| / max(||f||, 1e-300).
  double residual(const GridFunction& f) const;

  const KernelVectors& kernels() const noexcept { return kernels_; }
  /// Coefficients of k_lambda = (1 - conj(theta(lambda)) theta)/(1 - conj(lambda) z).
  Vector kernel_at(Complex lambda) const;
  const AntilinearMap& conjugation() const noexcept { return conjugation_; }
  const ShiftPair& compressed_shift() const noexcept { return shift_; }

private:
  InnerFunction theta_;
  std::vector<Complex> ordered_zeros_;
  Complex theta0_;
  Matrix basis_;
  GridFunction theta_samples_;
  KernelVectors kernels_;
  AntilinearMap conjugation_;
  ShiftPair shift_;
};

/// Zeros sorted by modulus then argument; ties within 1e-12 keep input order.
std::vector<Complex> ordered_zeros(const InnerFunction& theta);

/// K^2_theta, K^2_alpha and K^2_{theta/alpha} on one grid, with the maps that
/// realize K^2_theta = K^2_alpha (+) alpha K^2_q = K^2_q (+) q K^2_alpha.
struct SpacePair {
  static SpacePair build(const InnerFunction& theta, const InnerFunction& alpha,
                         std::size_t extra_degree = 0, std::size_t grid_size = 0);

  InnerFunction theta;
  InnerFunction alpha;
  InnerFunction quotient;
  ModelSpace theta_space;
  ModelSpace alpha_space;
  std::optional<ModelSpace> quotient_space;  // empty when theta/alpha is constant

  Matrix inclusion;             // K_alpha -> K_theta
  Matrix alpha_times_quotient;  // K_q -> K_theta, f -> alpha f
  Matrix quotient_inclusion;    // K_q -> K_theta
  Matrix quotient_times_alpha;  // K_alpha -> K_theta, f -> q f

  Complex theta0;
  Complex alpha0;
  Complex quotient0;

  std::size_t grid_size() const noexcept { return theta_space.grid_size(); }
  std::size_t quotient_dim() const noexcept { return theta_space.dim() - alpha_space.dim(); }
  bool quotient_is_constant() const noexcept { return !quotient_space.has_value(); }
  GridFunction alpha_samples() const { return alpha_space.theta_samples(); }
  GridFunction quotient_samples() const;
};

/// f = f_alpha + alpha f_quot with f_alpha in K_alpha, f_quot in K_q.
struct AlphaSplit {
  Vector alpha_part;
  Vector quotient_part;
};
AlphaSplit decompose(const SpacePair& pair, const Vector& f);

/// f = f_quot + q f_alpha with f_quot in K_q, f_alpha in K_alpha.
struct QuotientSplit {
  Vector quotient_part;
  Vector alpha_part;
};
QuotientSplit decompose_quotient_first(const SpacePair& pair, const Vector& f);

}  // namespace atto
