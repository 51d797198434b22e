#include "atto/operator.hpp"

#include <algorithm>
#include <cmath>

#include "atto/linalg.hpp"

namespace atto {

Matrix compress(const ModelSpace& domain, const ModelSpace& codomain, const GridFunction& phi) {
  if (domain.grid_size() != codomain.grid_size() || phi.size() != domain.grid_size()) {
    throw Error(ErrorKind::GridMismatch, "symbol and spaces use different grids");
  }
  return codomain.basis_samples().adjoint() * (phi.samples().asDiagonal() * domain.basis_samples()) /
         static_cast<double>(phi.size());
}

AttoMatrix build_atto(const SpacePair& pair, const GridFunction& phi) {
  check_band_limit(phi);
  return {pair.theta, pair.alpha, compress(pair.theta_space, pair.alpha_space, phi)};
}

AttoMatrix build_atto(const SpacePair& pair, const SymbolPair& symbol) {
  return build_atto(pair, symbol_function(pair, symbol));
}

AttoMatrix build_atto_reverse(const SpacePair& pair, const GridFunction& phi) {
  check_band_limit(phi);
  return {pair.alpha, pair.theta, compress(pair.alpha_space, pair.theta_space, phi)};
}

AttoMatrix adjoint(const AttoMatrix& a) { return {a.codomain, a.domain, a.matrix.adjoint()}; }

GridFunction symbol_function(const SpacePair& pair, const SymbolPair& symbol) {
  return pair.alpha_space.synthesize(symbol.psi) + pair.theta_space.synthesize(symbol.chi).conj();
}

SymbolPair normalize_symbol(const SpacePair& pair, const GridFunction& phi) {
  return {pair.alpha_space.project(project_plus(phi)),
          pair.theta_space.project(project_minus(phi).conj())};
}

bool is_zero_symbol(const SpacePair& pair, const GridFunction& phi) {
  const auto a = build_atto(pair, phi);
  return operator_norm(a.matrix) <= 1e-8 * (1.0 + phi.sup_norm());
}

SymbolPair gauge_shift(const SpacePair& pair, const SymbolPair& symbol, Complex c) {
  return {symbol.psi + c * pair.alpha_space.kernels().k0,
          symbol.chi - std::conj(c) * pair.theta_space.kernels().k0};
}

GaugeFit fit_gauge(const SpacePair& pair, const SymbolPair& a, const SymbolPair& b) {
  const auto& k0a = pair.alpha_space.kernels().k0;
  const auto& k0t = pair.theta_space.kernels().k0;
  Vector u(k0a.size() + k0t.size());
  u << k0a, -k0t.conjugate();
  Vector w(u.size());
  w << (b.psi - a.psi), (b.chi - a.chi).conjugate();
  const Complex c = u.dot(w) / u.squaredNorm();
  return {c, (w - c * u).norm()};
}

bool is_gauge_trivial(const SpacePair& pair, const SymbolPair& symbol, double tolerance) {
  const SymbolPair zero{Vector::Zero(symbol.psi.size()), Vector::Zero(symbol.chi.size())};
  return fit_gauge(pair, zero, symbol).residual <= tolerance;
}

namespace {

// Orthonormal basis of m * K_{rest} in the coordinates of `space`.
Matrix multiplied_subspace(const ModelSpace& space, const InnerFunction& m, const InnerFunction& rest) {
  if (rest.is_constant()) return Matrix(static_cast<Eigen::Index>(space.dim()), 0);
  const auto sub = ModelSpace::build(rest, space.grid_size());
  const auto ms = GridFunction::from_inner(space.grid_size(), m).samples();
  Matrix coords = space.basis_samples().adjoint() * (ms.asDiagonal() * sub.basis_samples()) /
                  static_cast<double>(space.grid_size());
  return orthonormal_range(coords);
}

}  // namespace

KernelReport kernel_inner_symbol(const InnerFunction& theta, const InnerFunction& alpha,
                                 const InnerFunction& phi, std::size_t grid_size) {
  const std::size_t m = grid_size == 0 ? select_grid_size({theta, alpha, phi}) : grid_size;
  const auto kt = ModelSpace::build(theta, m);
  const auto ka = ModelSpace::build(alpha, m);
  const auto phi_s = GridFunction::from_inner(m, phi);
  const Matrix a = compress(kt, ka, phi_s);

  KernelReport report;
  report.numerical = null_space(a, 1e-8);
  report.common = gcd(alpha, phi);
  report.multiplier = quotient(alpha, report.common).with_constant(1.0);

  const auto beta = GridFunction::from_inner(m, report.multiplier);
  for (Eigen::Index k = 0; k < report.numerical.cols(); ++k) {
    const auto f = kt.synthesize(report.numerical.col(k));
    report.membership_residual =
        std::max(report.membership_residual, project_minus(beta.conj() * f).l2_norm());
  }

  if (report.multiplier.is_constant()) {
    report.prediction_available = true;
    report.predicted = Matrix::Identity(static_cast<Eigen::Index>(kt.dim()),
                                        static_cast<Eigen::Index>(kt.dim()));
  } else if (divides(report.multiplier, theta)) {
    report.prediction_available = true;
    report.predicted = multiplied_subspace(kt, report.multiplier, quotient(theta, report.multiplier));
  }
  if (report.prediction_available) {
    report.dimensions_match = report.predicted.cols() == report.numerical.cols();
    report.angle = subspace_distance(report.predicted, report.numerical);
  }
  return report;
}

ConjugateKernelReport kernel_conjugate_inner_symbol(const InnerFunction& theta,
                                                    const InnerFunction& alpha,
                                                    const InnerFunction& phi,
                                                    std::size_t grid_size) {
  if (!divides(theta, alpha)) {
    throw Error(ErrorKind::NotDivisible, "this kernel description needs theta <= alpha");
  }
  const std::size_t m = grid_size == 0 ? select_grid_size({theta, alpha, phi}) : grid_size;
  const auto kt = ModelSpace::build(theta, m);
  const auto ka = ModelSpace::build(alpha, m);
  const Matrix a = compress(kt, ka, GridFunction::from_inner(m, phi).conj());
  ConjugateKernelReport report;
  report.numerical = null_space(a, 1e-8);
  const auto g = gcd(theta, phi);
  report.predicted = multiplied_subspace(kt, InnerFunction(), g);
  report.dimensions_match = report.predicted.cols() == report.numerical.cols();
  report.angle = subspace_distance(report.predicted, report.numerical);
  return report;
}

std::vector<IdentityCheck> kernel_action_suite(const SpacePair& pair, const SymbolPair& symbol) {
  const auto& kt = pair.theta_space;
  const auto& ka = pair.alpha_space;
  const std::size_t m = pair.grid_size();
  const auto one = GridFunction::constant(m, 1.0);
  const auto z = identity_function(m);
  const auto zbar = z.conj();
  const auto theta = kt.theta_samples();
  const auto alpha = ka.theta_samples();
  const Complex t0 = pair.theta0, a0 = pair.alpha0, q0 = pair.quotient0;

  const auto psi = ka.synthesize(symbol.psi);
  const auto chi = kt.synthesize(symbol.chi);
  const auto split = decompose_quotient_first(pair, symbol.chi);
  const auto chi_a = ka.synthesize(split.alpha_part);
  const auto chi_q = pair.quotient_space ? pair.quotient_space->synthesize(split.quotient_part)
                                         : GridFunction::zeros(m);
  const Complex psi0 = ka.evaluate(symbol.psi, 0.0);
  const Complex chi0 = kt.evaluate(symbol.chi, 0.0);
  const Complex chi_a0 = ka.evaluate(split.alpha_part, 0.0);

  const auto k0t_grid = one - std::conj(t0) * theta;
  const auto k0a_grid = one - std::conj(a0) * alpha;

  const Matrix a_psi = compress(kt, ka, psi);
  const Matrix a_chibar = compress(kt, ka, chi.conj());
  const Matrix r_psibar = compress(ka, kt, psi.conj());
  const Matrix r_chi = compress(ka, kt, chi);
  const auto& kvt = kt.kernels();
  const auto& kva = ka.kernels();

  std::vector<IdentityCheck> checks;
  auto record = [&](std::string name, const GridFunction& lhs, const GridFunction& rhs) {
    checks.push_back({std::move(name), (lhs - rhs).l2_norm(), rhs.l2_norm()});
  };

  record("A_psi k0", ka.synthesize(a_psi * kvt.k0), psi);
  record("A_conj(chi) k0", ka.synthesize(a_chibar * kvt.k0),
         std::conj(chi0) * k0a_grid - std::conj(t0) * alpha * (chi_a.conj() - one * std::conj(chi_a0)));
  record("A_psi k0~", ka.synthesize(a_psi * kvt.k0_tilde),
         zbar * ((q0 * psi0) * alpha - t0 * psi));
  record("A_conj(chi) k0~", ka.synthesize(a_chibar * kvt.k0_tilde), alpha * zbar * chi_a.conj());
  record("reverse A_conj(psi) k0", kt.synthesize(r_psibar * kva.k0),
         std::conj(psi0) * k0t_grid - std::conj(a0) * (alpha * psi.conj() - std::conj(q0 * psi0) * theta));
  record("reverse A_chi k0", kt.synthesize(r_chi * kva.k0), chi - std::conj(a0) * alpha * chi_q);
  record("reverse A_conj(psi) k0~", kt.synthesize(r_psibar * kva.k0_tilde), alpha * zbar * psi.conj());
  record("reverse A_chi k0~", kt.synthesize(r_chi * kva.k0_tilde),
         model_projection(theta, alpha * zbar * chi) - a0 * zbar * (chi - chi0 * one));
  return checks;
}

}  // namespace atto
