#include "atto/recover.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "atto/linalg.hpp"

namespace atto {

namespace {

constexpr double kSingularDeterminant = 1e-12;
constexpr double kMaxAlphaAtZero = 0.999;
constexpr double kMinAlphaGap = 1e-6;

void check_shape(const SpacePair& pair, const Matrix& a) {
  if (a.rows() != static_cast<Eigen::Index>(pair.alpha_space.dim()) ||
      a.cols() != static_cast<Eigen::Index>(pair.theta_space.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "operator shape does not match K_theta -> K_alpha");
  }
}

}  // namespace

RecoveryScalars recover_scalars(const SpacePair& pair, const Matrix& a, const Gauge& gauge) {
  check_shape(pair, a);
  const auto& kt = pair.theta_space.kernels();
  const auto& ka = pair.alpha_space.kernels();
  const Complex lhs_k0 = inner(Vector(a * kt.k0), ka.k0);
  const Complex lhs_kt = inner(Vector(a * kt.k0_tilde), ka.k0_tilde);
  const Complex coupling = std::conj(pair.theta0) * pair.alpha0;
  const double k0a_norm2 = ka.k0.squaredNorm();

  RecoveryScalars s;
  if (gauge.kind == GaugeKind::ChiAtZero) {
    s.c = std::conj(gauge.value);
    Eigen::Matrix2cd m;
    m << Complex(1.0), coupling, pair.quotient0, Complex(1.0);
    s.determinant = m.determinant();
    if (std::abs(s.determinant) < kSingularDeterminant) {
      throw Error(ErrorKind::SingularSystem, "scalar system is singular");
    }
    Eigen::Vector2cd rhs(lhs_k0 - k0a_norm2 * s.c, lhs_kt);
    const Eigen::Vector2cd ab = m.partialPivLu().solve(rhs);
    s.a = ab[0];
    s.b = ab[1];
  } else {
    s.a = gauge.value;
    Eigen::Matrix2cd m;
    m << coupling, Complex(k0a_norm2), Complex(1.0), Complex(0.0);
    s.determinant = m.determinant();
    Eigen::Vector2cd rhs(lhs_k0 - s.a, lhs_kt - pair.quotient0 * s.a);
    const Eigen::Vector2cd bc = m.partialPivLu().solve(rhs);
    s.b = bc[0];
    s.c = bc[1];
  }
  return s;
}

ActionsRecovery recover_symbol_from_actions(const SpacePair& pair, const Matrix& a, const Gauge& gauge) {
  check_shape(pair, a);
  if (!membership_extract(pair, a).in_class) {
    throw Error(ErrorKind::NotInClass, "operator is not an asymmetric truncated Toeplitz operator");
  }
  if (std::abs(pair.alpha0) > kMaxAlphaAtZero) {
    throw Error(ErrorKind::SingularSystem, "|alpha(0)| too close to 1");
  }

  ActionsRecovery out;
  out.scalars = recover_scalars(pair, a, gauge);
  const auto& s = out.scalars;
  const std::size_t m = pair.grid_size();
  const auto& kt = pair.theta_space.kernels();
  const auto& ka = pair.alpha_space.kernels();
  const GridFunction z = identity_function(m);
  const GridFunction alpha = pair.alpha_samples();
  const GridFunction& theta = pair.theta_space.theta_samples();
  const GridFunction q = pair.quotient_samples();
  const Complex t0 = pair.theta0;

  const GridFunction r1 = pair.alpha_space.synthesize(a * kt.k0) - s.c * pair.alpha_space.synthesize(ka.k0) -
                          (std::conj(t0) * s.b) * alpha;
  const GridFunction r2 = z * pair.alpha_space.synthesize(a * kt.k0_tilde) - (pair.quotient0 * s.a) * alpha;

  // Rows one and two do not involve Z.
  const double det = 1.0 - std::norm(t0);
  const GridFunction x = (1.0 / det) * (r1 + std::conj(t0) * r2);
  const GridFunction y = (1.0 / det) * (r2 + t0 * r1);

  Vector chi;
  if (pair.quotient_is_constant()) {
    out.min_alpha_gap = 0.0;
    chi = pair.theta_space.project(theta * y.conj());
  } else {
    const Vector gap = (alpha.samples().array() - pair.alpha0).matrix();
    out.min_alpha_gap = gap.cwiseAbs().minCoeff();
    if (out.min_alpha_gap < kMinAlphaGap) {
      throw Error(ErrorKind::SingularSystem, "alpha - alpha(0) vanishes on the grid");
    }
    const Vector adjoint_action = a.adjoint() * ka.k0;
    const GridFunction r3 = z * pair.theta_space.synthesize(pair.theta_space.conjugation()(adjoint_action)) -
                            s.a * theta;
    const GridFunction w = r3 + pair.alpha0 * (q * x) - y;
    const GridFunction zz(w.samples().cwiseQuotient(gap));
    chi = pair.theta_space.project(q * zz.conj() + theta * y.conj());
  }
  out.symbol.psi = pair.alpha_space.project(x);
  out.symbol.chi = chi;
  return out;
}

MuNuExtraction extract_mu_nu(const SpacePair& pair, const Matrix& a) {
  check_shape(pair, a);
  return mu_nu_from_defect(pair, defect_two(pair, a));
}

MuNuExtraction mu_nu_from_defect(const SpacePair& pair, const Matrix& d2) {
  check_shape(pair, d2);
  const auto& kt = pair.theta_space.kernels().k0_tilde;
  const auto& ka = pair.alpha_space.kernels().k0_tilde;
  MuNuExtraction out;
  out.data.mu = d2 * kt / kt.squaredNorm();
  out.data.nu = (d2.adjoint() * ka - inner(ka, out.data.mu) * kt) / ka.squaredNorm();
  out.residual = operator_norm(d2 - rank_two_second(pair, out.data));
  return out;
}

namespace {

Complex canonical_shift(const SpacePair& pair, const CharData& data) {
  const auto& kq = pair.quotient_space->kernels().k0_tilde;
  const Vector pq = pair.alpha_times_quotient.adjoint() * data.nu;
  return inner(pq, kq) / kq.squaredNorm();
}

}  // namespace

CharData canonicalize_mu_nu(const SpacePair& pair, const CharData& data) {
  if (pair.quotient_is_constant()) {
    throw Error(ErrorKind::QuotientConstant, "theta/alpha is constant");
  }
  return char_gauge_shift(pair, data, canonical_shift(pair, data));
}

MuNuRecovery recover_symbol_from_mu_nu(const SpacePair& pair, const CharData& data) {
  if (data.mu.size() != static_cast<Eigen::Index>(pair.alpha_space.dim()) ||
      data.nu.size() != static_cast<Eigen::Index>(pair.theta_space.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "mu must lie in K_alpha and nu in K_theta");
  }
  const auto& ca = pair.alpha_space.conjugation();
  MuNuRecovery out;
  if (pair.quotient_is_constant()) {
    out.symmetric = true;
    out.symbol.psi = ca(Vector(pair.inclusion.adjoint() * data.nu));
    out.symbol.chi = pair.theta_space.conjugation()(Vector(pair.inclusion * data.mu));
  } else {
    out.c = canonical_shift(pair, data);
    const CharData canon = char_gauge_shift(pair, data, out.c);
    out.symbol.psi = ca(Vector(pair.inclusion.adjoint() * canon.nu));
    const Vector pq = pair.alpha_times_quotient.adjoint() * canon.nu;
    out.symbol.chi = pair.quotient_inclusion * (pair.quotient_space->compressed_shift().shift * pq) +
                     pair.quotient_times_alpha * ca(canon.mu);
  }
  const Matrix target = rank_two_second(pair, data);
  const Matrix got = defect_two(pair, build_atto(pair, out.symbol).matrix);
  out.residual = operator_norm(got - target);
  if (out.residual > 1e-8 * (1.0 + operator_norm(target))) {
    throw Error(ErrorKind::NotInClass, "data does not arise from an operator in the class");
  }
  return out;
}

}  // namespace atto
