#include "atto/characterize.hpp"

#include <algorithm>
#include <cmath>

#include "atto/linalg.hpp"

namespace atto {

namespace {

void require_shape(const SpacePair& pair, const Matrix& a, bool forward) {
  const auto rows = static_cast<Eigen::Index>(forward ? pair.alpha_space.dim() : pair.theta_space.dim());
  const auto cols = static_cast<Eigen::Index>(forward ? pair.theta_space.dim() : pair.alpha_space.dim());
  if (a.rows() != rows || a.cols() != cols) {
    throw Error(ErrorKind::DimensionMismatch, "operator matrix has the wrong shape");
  }
}

// Orthogonal projection onto the line spanned by v.
Matrix line_projection(const Vector& v) { return outer(v, v) / v.squaredNorm(); }

}  // namespace

Matrix defect_one(const SpacePair& pair, const Matrix& a) {
  require_shape(pair, a, true);
  return a - pair.alpha_space.compressed_shift().shift * a * pair.theta_space.compressed_shift().adjoint;
}

Matrix defect_two(const SpacePair& pair, const Matrix& a) {
  require_shape(pair, a, true);
  return a - pair.alpha_space.compressed_shift().adjoint * a * pair.theta_space.compressed_shift().shift;
}

Matrix defect_one_reverse(const SpacePair& pair, const Matrix& b) {
  require_shape(pair, b, false);
  return b - pair.theta_space.compressed_shift().shift * b * pair.alpha_space.compressed_shift().adjoint;
}

Matrix defect_two_reverse(const SpacePair& pair, const Matrix& b) {
  require_shape(pair, b, false);
  return b - pair.theta_space.compressed_shift().adjoint * b * pair.alpha_space.compressed_shift().shift;
}

Matrix rank_two_first(const SpacePair& pair, const SymbolPair& symbol) {
  return outer(symbol.psi, pair.theta_space.kernels().k0) +
         outer(pair.alpha_space.kernels().k0, symbol.chi);
}

Matrix rank_two_second(const SpacePair& pair, const CharData& data) {
  return outer(data.mu, pair.theta_space.kernels().k0_tilde) +
         outer(pair.alpha_space.kernels().k0_tilde, data.nu);
}

CharData mu_nu_from_symbol(const SpacePair& pair, const SymbolPair& symbol) {
  const auto split = decompose_quotient_first(pair, symbol.chi);
  const auto& ca = pair.alpha_space.conjugation();
  CharData out;
  out.mu = ca(split.alpha_part);
  out.nu = pair.inclusion * ca(symbol.psi) +
           pair.theta_space.compressed_shift().adjoint * (pair.alpha_times_quotient * split.quotient_part);
  return out;
}

CharData char_gauge_shift(const SpacePair& pair, const CharData& data, Complex b) {
  return {data.mu + std::conj(b) * pair.alpha_space.kernels().k0_tilde,
          data.nu - b * pair.theta_space.kernels().k0_tilde};
}

MembershipReport membership_extract(const SpacePair& pair, const Matrix& a) {
  const Matrix d1 = defect_one(pair, a);
  const auto& k0t = pair.theta_space.kernels().k0;
  const auto& k0a = pair.alpha_space.kernels().k0;
  MembershipReport report;
  report.symbol.psi = d1 * k0t / k0t.squaredNorm();
  report.symbol.chi = (d1.adjoint() * k0a - inner(k0a, report.symbol.psi) * k0t) / k0a.squaredNorm();
  report.residual = operator_norm(d1 - rank_two_first(pair, report.symbol));
  report.tolerance = 1e-8 * (1.0 + operator_norm(a));
  report.in_class = report.residual <= report.tolerance;
  return report;
}

RankOneReport rank_one_conditions(const SpacePair& pair, const SymbolPair& symbol, double tolerance) {
  RankOneReport r;
  const auto& k0a = pair.alpha_space.kernels().k0;
  const auto split = decompose_quotient_first(pair, symbol.chi);
  const double scale = 1.0 + symbol.psi.norm() + symbol.chi.norm();

  r.s = inner(symbol.psi, k0a) / k0a.squaredNorm();
  r.first_residual = (symbol.psi - r.s * k0a).norm();
  if (pair.quotient_space) {
    r.first_residual += (split.quotient_part + std::conj(r.s) * pair.quotient_space->kernels().k0).norm();
  }
  r.symbol_first = r.first_residual <= tolerance * scale;

  const Complex t = inner(split.alpha_part, k0a) / k0a.squaredNorm();
  r.second_residual = (split.alpha_part - t * k0a).norm();
  r.symbol_second = r.second_residual <= tolerance * scale;

  const Matrix d2 = defect_two(pair, build_atto(pair, symbol).matrix);
  const auto n = static_cast<Eigen::Index>(pair.theta_space.dim());
  const auto m = static_cast<Eigen::Index>(pair.alpha_space.dim());
  const double d_scale = std::max(1.0, operator_norm(d2));
  r.defect_first_residual =
      operator_norm(d2 * (Matrix::Identity(n, n) - line_projection(pair.theta_space.kernels().k0_tilde)));
  r.defect_second_residual =
      operator_norm((Matrix::Identity(m, m) - line_projection(pair.alpha_space.kernels().k0_tilde)) * d2);
  r.defect_first = r.defect_first_residual <= tolerance * d_scale;
  r.defect_second = r.defect_second_residual <= tolerance * d_scale;
  r.singular_values = singular_values(d2);
  r.rank = numerical_rank(d2, tolerance);
  return r;
}

std::vector<IdentityCheck> projection_identity_suite(const SpacePair& pair, const SymbolPair& symbol) {
  const auto& kt = pair.theta_space;
  const auto& ka = pair.alpha_space;
  const std::size_t m = pair.grid_size();
  const auto one = GridFunction::constant(m, 1.0);
  const auto zbar = identity_function(m).conj();
  const auto alpha = ka.theta_samples();
  const auto q = pair.quotient_samples();
  const Complex a0 = pair.alpha0, q0 = pair.quotient0;

  const auto split = decompose_quotient_first(pair, symbol.chi);
  const auto psi = ka.synthesize(symbol.psi);
  const auto chi = kt.synthesize(symbol.chi);
  const auto chi_q = pair.quotient_space ? pair.quotient_space->synthesize(split.quotient_part)
                                         : GridFunction::zeros(m);
  const Complex psi0 = ka.evaluate(symbol.psi, 0.0);
  const Complex chi0 = kt.evaluate(symbol.chi, 0.0);
  const Complex chi_a0 = ka.evaluate(split.alpha_part, 0.0);
  const Complex chi_q0 = pair.quotient_space ? pair.quotient_space->evaluate(split.quotient_part, 0.0)
                                             : Complex{0.0, 0.0};

  const auto kt_t = kt.synthesize(kt.kernels().k0_tilde);
  const auto ka_t = ka.synthesize(ka.kernels().k0_tilde);
  const double nt = kt.kernels().k0_tilde.squaredNorm();
  const double na = ka.kernels().k0_tilde.squaredNorm();

  std::vector<IdentityCheck> checks;
  auto record = [&](std::string name, const GridFunction& lhs, const GridFunction& rhs) {
    checks.push_back({std::move(name), (lhs - rhs).l2_norm(), rhs.l2_norm()});
  };
  auto onto = [](const GridFunction& f, const GridFunction& line) {
    return line * (inner_product(f, line) / inner_product(line, line));
  };

  // S*_theta(alpha chi_q) and C_alpha psi by quadrature.
  const auto backward = zbar * (alpha * chi_q - (a0 * chi_q0) * one);
  const auto c_psi = alpha * zbar * psi.conj();

  record("line k0~theta of S*(alpha chi_q)", onto(backward, kt_t), kt_t * (-std::conj(pair.theta0) * a0 * chi_q0 / nt));
  record("line k0~theta of C_alpha psi", onto(c_psi, kt_t), kt_t * (std::conj(q0 * psi0) / nt));
  record("P_alpha S*(alpha chi_q)", ka.synthesize(ka.project(backward)), ka_t * chi_q0);
  record("line k0~alpha of S*(alpha chi_q)", onto(backward, ka_t), ka_t * chi_q0);
  record("(P_theta - P_alpha) S*(alpha chi_q)",
         kt.synthesize(kt.project(backward)) - ka.synthesize(ka.project(backward)),
         alpha * zbar * (chi_q - chi_q0 * one));
  const auto pa_chi = ka.synthesize(ka.project(q.conj() * chi));
  record("line k0~alpha of C_alpha P_alpha(conj(q) chi)", onto(alpha * zbar * pa_chi.conj(), ka_t),
         ka_t * (std::conj(chi_a0) / na));
  record("line k0~alpha of C_alpha psi", onto(c_psi, ka_t), ka_t * (std::conj(psi0) / na));

  // Compressions of the two rank-two forms onto kernel lines.
  const auto a = build_atto(pair, symbol).matrix;
  const auto& k0t = kt.kernels().k0;
  const auto& k0a = ka.kernels().k0;
  const auto& kt_v = kt.kernels().k0_tilde;
  const auto& ka_v = ka.kernels().k0_tilde;
  auto record_matrix = [&](std::string name, const Matrix& lhs, const Matrix& rhs) {
    checks.push_back({std::move(name), operator_norm(lhs - rhs), operator_norm(rhs)});
  };
  const Matrix d1 = defect_one(pair, a);
  const Matrix d2 = defect_two(pair, a);
  const Complex first = psi0 / k0a.squaredNorm() + std::conj(chi0) / k0t.squaredNorm();
  record_matrix("k0 compression of the first defect", line_projection(k0a) * d1 * line_projection(k0t),
                first * outer(k0a, k0t));
  const Complex second =
      std::conj(chi_a0) / na + (q0 * psi0 - pair.theta0 * std::conj(a0) * std::conj(chi_q0)) / nt;
  record_matrix("k0~ compression of the second defect", line_projection(ka_v) * d2 * line_projection(kt_v),
                second * outer(ka_v, kt_v));
  const Vector ka_in_t = pair.inclusion * ka_v;
  const Complex third = (std::conj(chi0) - std::conj(chi_q0) * std::norm(a0) + psi0) / k0a.squaredNorm();
  record_matrix("k0~alpha compression of the second defect",
                line_projection(ka_v) * d2 * line_projection(ka_in_t), third * outer(ka_v, ka_in_t));
  return checks;
}

SeriesResult series_operator(const SpacePair& pair, const Matrix& d, double tolerance,
                             std::size_t max_terms) {
  require_shape(pair, d, true);
  const auto& sa = pair.alpha_space.compressed_shift().adjoint;
  const auto& st = pair.theta_space.compressed_shift().shift;
  SeriesResult result;
  result.sum = Matrix::Zero(d.rows(), d.cols());
  Matrix term = d;
  while (result.terms < max_terms) {
    result.sum += term;
    ++result.terms;
    result.last_term_norm = term.norm();
    if (result.last_term_norm <= tolerance * (1.0 + result.sum.norm())) break;
    term = sa * term * st;
  }
  return result;
}

}  // namespace atto
