#include "atto/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "atto/characterize.hpp"
#include "atto/linalg.hpp"
#include "atto/model_space.hpp"
#include "atto/operator.hpp"
#include "atto/recover.hpp"

namespace atto {

void CheckResult::record(double value) {
  if (cases == 0) {
    worst = value;
  } else if (lower_bound ? !(value >= worst) : !(value <= worst)) {
    worst = value;
  }
  ++cases;
}

bool CheckResult::passed() const {
  if (cases == 0) return false;
  return lower_bound ? worst >= bound : worst <= bound;
}

CheckResult& CheckSet::at(const std::string& name, double bound, bool lower_bound) {
  for (auto& r : results_) {
    if (r.name == name) return r;
  }
  results_.push_back({name, bound, lower_bound, 0, 0.0});
  return results_.back();
}

bool CheckSet::all_passed() const {
  return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.passed(); });
}

const CheckResult* CheckSet::find(const std::string& name) const {
  for (const auto& r : results_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

constexpr double kStructural = 1e-9;
constexpr std::size_t kSymbolBand = 8;

SymbolPair random_symbol(InstanceGenerator& gen, const SpacePair& p) {
  return {gen.gaussian_vector(p.alpha_space.dim()), gen.gaussian_vector(p.theta_space.dim())};
}

GridFunction polynomial_grid(std::size_t m, const std::vector<Complex>& c) {
  std::map<long, Complex> terms;
  for (std::size_t k = 0; k < c.size(); ++k) terms[static_cast<long>(k)] = c[k];
  return GridFunction::from_laurent(m, terms);
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double circle_deviation(const InnerFunction& f) {
  double worst = 0.0;
  for (std::size_t j = 0; j < 64; ++j) {
    worst = std::max(worst, std::abs(std::abs(f(grid_point(64, j))) - 1.0));
  }
  return worst;
}

}  // namespace

void verify_inner_functions(InstanceGenerator& gen, std::size_t cases, CheckSet& out) {
  for (std::size_t i = 0; i < cases; ++i) {
    auto [theta, alpha] = gen.pair();
    const auto q = quotient(theta, alpha);
    auto& unimodular = out.at("inner.unimodular", 1e-10);
    unimodular.record(std::max({circle_deviation(theta), circle_deviation(alpha), circle_deviation(q)}));

    double product = 0.0;
    for (std::size_t j = 0; j < 64; ++j) {
      const Complex z = grid_point(64, j);
      product = std::max(product, std::abs(q(z) * alpha(z) - theta(z)));
    }
    out.at("inner.quotient_product", 1e-10).record(product);
    out.at("inner.quotient_degree", 0.0)
        .record(std::abs(static_cast<double>(q.degree()) -
                         (static_cast<double>(theta.degree()) - static_cast<double>(alpha.degree()))));

    const auto g = gcd(theta, alpha);
    const bool gcd_ok = g.degree() <= std::min(theta.degree(), alpha.degree()) && same_zeros(g, alpha);
    out.at("inner.gcd_degree", 0.0).record(gcd_ok ? 0.0 : 1.0);

    const auto rotated = theta.with_constant(gen.unimodular());
    const bool antisymmetric = !(divides(theta, rotated) && divides(rotated, theta)) || same_zeros(theta, rotated);
    out.at("inner.divides_antisymmetric", 0.0).record(antisymmetric && divides(alpha, theta) ? 0.0 : 1.0);
  }
}

void verify_grid(InstanceGenerator& gen, std::size_t cases, CheckSet& out) {
  const std::size_t m = grid_floor();
  for (std::size_t i = 0; i < cases; ++i) {
    auto f = GridFunction::from_laurent(m, gen.laurent(-20, 20));
    const double direct = f.samples().squaredNorm() / static_cast<double>(m);
    out.at("grid.parseval", 1e-14).record(std::abs(inner_product(f, f).real() - direct) / std::max(1.0, direct));

    const auto pf = project_plus(f);
    out.at("grid.projection_idempotent", 1e-13).record((project_plus(pf) - pf).l2_norm());
    out.at("grid.projection_split", 1e-13).record((pf + project_minus(f) - f).l2_norm());

    const Complex a = gen.in_disk(0.8);
    const Complex b = gen.in_disk(0.8);
    auto cauchy = [](Complex w) { return [w](Complex z) { return 1.0 / (1.0 - std::conj(w) * z); }; };
    const Complex coarse =
        inner_product(GridFunction::from_function(m, cauchy(a)), GridFunction::from_function(m, cauchy(b)));
    const Complex fine =
        inner_product(GridFunction::from_function(2 * m, cauchy(a)), GridFunction::from_function(2 * m, cauchy(b)));
    out.at("grid.spectral_accuracy", 1e-9).record(std::abs(coarse - fine));
  }
}

void verify_model_space(InstanceGenerator& gen, std::size_t cases, CheckSet& out) {
  for (std::size_t i = 0; i < cases; ++i) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha);
    const auto& ts = p.theta_space;
    const auto& as = p.alpha_space;
    const auto n = static_cast<Eigen::Index>(ts.dim());
    const auto& st = ts.compressed_shift();
    const auto& sa = as.compressed_shift();
    const auto& kt = ts.kernels();
    const auto& ka = as.kernels();
    const Matrix pa = p.inclusion.adjoint();

    out.at("model.intertwining_projection", kStructural).record(operator_norm(pa * st.shift - sa.shift * pa));
    out.at("model.intertwining_adjoint", kStructural)
        .record(operator_norm(st.adjoint * p.inclusion - p.inclusion * sa.adjoint));

    const Vector f = gen.gaussian_vector(ts.dim());
    const Vector lhs = pa * ts.conjugation()(f);
    const Vector rhs = as.conjugation()(Vector(p.quotient_times_alpha.adjoint() * f));
    out.at("model.conjugation_projection", kStructural).record((lhs - rhs).norm());

    // Grid pairing against the Cauchy integral for f(lambda).
    double reproducing = 0.0;
    const auto fs = ts.synthesize(f);
    for (int k = 0; k < 10; ++k) {
      const Complex lambda = gen.in_disk(0.9);
      const auto cauchy = GridFunction::from_function(
          p.grid_size(), [lambda](Complex z) { return 1.0 / (1.0 - lambda * std::conj(z)); });
      const Complex value = (fs * cauchy).mean();
      const Complex paired = inner_product(fs, ts.synthesize(ts.kernel_at(lambda)));
      reproducing = std::max(reproducing, std::abs(paired - value));
    }
    out.at("model.reproducing_kernel", kStructural).record(reproducing);

    Matrix krylov(n, n);
    Vector v = kt.k0;
    for (Eigen::Index k = 0; k < n; ++k) {
      krylov.col(k) = v;
      v = st.shift * v;
    }
    out.at("model.k0_cyclic", 1e-8, true).record(singular_values(krylov)[n - 1]);

    const auto& c = ts.conjugation();
    out.at("model.conjugation_involution", kStructural)
        .record(max_abs(c.matrix * c.matrix.conjugate() - Matrix::Identity(n, n)));
    out.at("model.conjugation_isometry", kStructural).record(std::abs(c(f).norm() - f.norm()));
    out.at("model.conjugation_kernel", kStructural).record((c(kt.k0) - kt.k0_tilde).norm());

    out.at("model.defect_shift_adjoint", kStructural)
        .record(max_abs(Matrix::Identity(n, n) - st.shift * st.adjoint - outer(kt.k0, kt.k0)));
    out.at("model.defect_adjoint_shift", kStructural)
        .record(max_abs(Matrix::Identity(n, n) - st.adjoint * st.shift - outer(kt.k0_tilde, kt.k0_tilde)));
    const Complex t0 = p.theta0;
    out.at("model.shift_kernels", kStructural)
        .record((st.adjoint * kt.k0 + std::conj(t0) * kt.k0_tilde).norm() +
                (st.shift * kt.k0_tilde + t0 * kt.k0).norm());

    Matrix sum(n, n);
    sum << p.inclusion, p.alpha_times_quotient;
    out.at("model.orthogonal_sum", kStructural).record(max_abs(sum.adjoint() * sum - Matrix::Identity(n, n)));

    const auto m = p.grid_size();
    const long band = static_cast<long>(ts.dim()) + 4;
    const auto g = GridFunction::from_laurent(m, gen.laurent(-band, band));
    Vector split = p.inclusion * as.project(g);
    Vector k0 = p.inclusion * ka.k0;
    Vector k0_tilde = p.quotient0 * p.inclusion * ka.k0_tilde;
    if (p.quotient_space) {
      split += p.alpha_times_quotient * p.quotient_space->project(p.alpha_samples().conj() * g);
      k0 += std::conj(p.alpha0) * p.alpha_times_quotient * p.quotient_space->kernels().k0;
      k0_tilde += p.alpha_times_quotient * p.quotient_space->kernels().k0_tilde;
    }
    out.at("model.projection_split", kStructural).record((ts.project(g) - split).norm());
    out.at("model.k0_split", kStructural).record((kt.k0 - k0).norm());
    out.at("model.k0_tilde_split", kStructural).record((kt.k0_tilde - k0_tilde).norm());
    out.at("model.projected_k0_tilde", kStructural).record((pa * kt.k0_tilde - p.quotient0 * ka.k0_tilde).norm());
  }
}

void verify_atto(InstanceGenerator& gen, std::size_t cases, CheckSet& out) {
  {
    // S_theta A f = z^5 but A S_alpha f = 0 for psi = z^3, alpha = z^2, theta = z^6, f = z.
    auto p = SpacePair::build(InnerFunction::monomial(6), InnerFunction::monomial(2), 3);
    auto a = build_atto_reverse(p, GridFunction::monomial(p.grid_size(), 3)).matrix;
    Vector f = Vector::Zero(2);
    f[1] = 1.0;
    Vector z5 = Vector::Zero(6);
    z5[5] = 1.0;
    const Vector left = p.theta_space.compressed_shift().shift * (a * f);
    const Vector right = a * (p.alpha_space.compressed_shift().shift * f);
    out.at("atto.shift_counterexample", 1e-12).record((left - z5).norm() + right.norm());
  }

  for (std::size_t i = 0; i < cases; ++i) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha, kSymbolBand);
    const auto m = p.grid_size();
    const auto s = random_symbol(gen, p);
    const Matrix a = build_atto(p, s).matrix;

    SymbolPair analytic{s.psi, Vector::Zero(static_cast<Eigen::Index>(p.theta_space.dim()))};
    const Matrix ap = build_atto(p, analytic).matrix;
    out.at("atto.analytic_intertwining", kStructural)
        .record(operator_norm(p.alpha_space.compressed_shift().shift * ap - ap * p.theta_space.compressed_shift().shift));

    const auto phi = symbol_function(p, s);
    out.at("atto.restriction", kStructural)
        .record(operator_norm(a * p.inclusion - compress(p.alpha_space, p.alpha_space, phi)));

    out.at("atto.adjoint", kStructural)
        .record(operator_norm(adjoint(build_atto(p, phi)).matrix - build_atto_reverse(p, phi.conj()).matrix));

    double gauge = 0.0;
    for (int k = 0; k < 5; ++k) {
      gauge = std::max(gauge, operator_norm(build_atto(p, gauge_shift(p, s, gen.gaussian())).matrix - a));
    }
    out.at("atto.gauge_invariance", 1e-10).record(gauge);

    const auto zero = p.alpha_samples() * polynomial_grid(m, gen.polynomial(4)) +
                      (p.theta_space.theta_samples() * polynomial_grid(m, gen.polynomial(4))).conj();
    out.at("atto.zero_symbol", kStructural).record(operator_norm(build_atto(p, zero).matrix));
    out.at("atto.nonzero_symbol", 1e-6, true).record(operator_norm(a));

    double actions = 0.0;
    for (const auto& c : kernel_action_suite(p, s)) actions = std::max(actions, c.residual);
    out.at("atto.kernel_actions", kStructural).record(actions);
  }
}

void verify_characterize(InstanceGenerator& gen, std::size_t cases, CheckSet& out) {
  for (std::size_t i = 0; i < cases; ++i) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha);
    const auto s = random_symbol(gen, p);
    const Matrix a = build_atto(p, s).matrix;
    const double scale = std::max(operator_norm(a), std::numeric_limits<double>::min());
    const auto d = mu_nu_from_symbol(p, s);
    const Matrix d1 = defect_one(p, a);
    const Matrix d2 = defect_two(p, a);

    out.at("char.defect_one_form", kStructural).record(operator_norm(d1 - rank_two_first(p, s)));
    out.at("char.defect_two_form", kStructural).record(operator_norm(d2 - rank_two_second(p, d)));
    auto third = [&](const Matrix& x) {
      const auto sv = singular_values(x);
      return sv.size() > 2 ? sv[2] / scale : 0.0;
    };
    out.at("char.defect_one_rank", 1e-8).record(third(d1));
    out.at("char.defect_two_rank", 1e-8).record(third(d2));

    const auto report = membership_extract(p, a);
    out.at("char.membership_roundtrip", 1e-8)
        .record(report.in_class ? operator_norm(build_atto(p, report.symbol).matrix - a)
                                : std::numeric_limits<double>::infinity());
    if (p.alpha_space.dim() >= 3) {
      Matrix noisy = a;
      for (int k = 0; k < 3; ++k) {
        noisy += outer(gen.gaussian_vector(p.alpha_space.dim()), gen.gaussian_vector(p.theta_space.dim()));
      }
      const auto rejected = membership_extract(p, noisy);
      out.at("char.membership_rejects_rank_three", 1.0, true).record(rejected.residual / rejected.tolerance);
    }

    const Matrix b = a.adjoint();
    const auto& kt = p.theta_space.kernels();
    const auto& ka = p.alpha_space.kernels();
    out.at("char.reverse_defect_one_form", kStructural)
        .record(operator_norm(defect_one_reverse(p, b) - outer(kt.k0, s.psi) - outer(s.chi, ka.k0)));
    out.at("char.reverse_defect_two_form", kStructural)
        .record(operator_norm(defect_two_reverse(p, b) - outer(kt.k0_tilde, d.mu) - outer(d.nu, ka.k0_tilde)));

    double projections = 0.0;
    for (const auto& c : projection_identity_suite(p, s)) projections = std::max(projections, c.residual);
    out.at("char.projection_identities", kStructural).record(projections);

    out.at("char.series", 1e-8).record(operator_norm(series_operator(p, d2).sum - a));
  }
}

void verify_recover(InstanceGenerator& gen, std::size_t cases, CheckSet& out) {
  for (std::size_t i = 0; i < cases; ++i) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha);
    const auto s = random_symbol(gen, p);
    const Matrix a = build_atto(p, s).matrix;

    const auto scalars = recover_scalars(p, a);
    out.at("recover.scalar_determinant", 1e-9)
        .record(std::max(0.0, (1.0 - std::norm(p.theta0)) - std::abs(scalars.determinant)));

    const auto r1 = recover_symbol_from_actions(p, a);
    const Matrix a1 = build_atto(p, r1.symbol).matrix;
    out.at("recover.actions_roundtrip", 1e-8).record(operator_norm(a1 - a));

    const auto r2 = recover_symbol_from_mu_nu(p, extract_mu_nu(p, a).data);
    const Matrix a2 = build_atto(p, r2.symbol).matrix;
    out.at("recover.mu_nu_roundtrip", 1e-8).record(operator_norm(a2 - a));
    out.at("recover.mu_nu_gauge", 1e-8).record(fit_gauge(p, s, r2.symbol).residual);
    out.at("recover.cross_path_matrix", 1e-8).record(operator_norm(a1 - a2));
    out.at("recover.cross_path_gauge", 1e-8).record(fit_gauge(p, r1.symbol, r2.symbol).residual);

    if (!p.quotient_is_constant()) {
      const auto c1 = canonicalize_mu_nu(p, mu_nu_from_symbol(p, s));
      const auto c2 = canonicalize_mu_nu(p, mu_nu_from_symbol(p, gauge_shift(p, s, gen.gaussian())));
      out.at("recover.canonical_unique", 1e-9).record((c1.mu - c2.mu).norm() + (c1.nu - c2.nu).norm());
    }
  }
}

CheckSet run_verify_suite(std::uint64_t seed, std::size_t cases) {
  InstanceGenerator gen(seed);
  CheckSet out;
  verify_inner_functions(gen, cases, out);
  verify_grid(gen, cases, out);
  verify_model_space(gen, cases, out);
  verify_atto(gen, cases, out);
  verify_characterize(gen, cases, out);
  verify_recover(gen, cases, out);
  return out;
}

}  // namespace atto
