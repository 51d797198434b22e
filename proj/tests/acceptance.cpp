// Acceptance criteria, one PASS/FAIL line each.
//
//   acceptance        run every criterion
//   acceptance N      run criterion N only
//
// Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "atto/characterize.hpp"
#include "atto/linalg.hpp"
#include "atto/random.hpp"
#include "atto/recover.hpp"
#include "atto/verify.hpp"

using namespace atto;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Vector vec(std::initializer_list<Complex> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto x : v) out[i++] = x;
  return out;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

SymbolPair random_symbol(InstanceGenerator& gen, const SpacePair& p) {
  return {gen.gaussian_vector(p.alpha_space.dim()), gen.gaussian_vector(p.theta_space.dim())};
}

/// Residual of (mu', nu') against (mu, nu) after the best char gauge
/// (mu + conj(b) k0~^alpha, nu - b k0~^theta).
double char_gauge_residual(const SpacePair& p, const CharData& d, const CharData& target) {
  const auto& ka = p.alpha_space.kernels().k0_tilde;
  const auto& kt = p.theta_space.kernels().k0_tilde;
  Vector u(ka.size() + kt.size()), w(ka.size() + kt.size());
  u << ka.conjugate(), -kt;
  w << (target.mu - d.mu).conjugate(), target.nu - d.nu;
  const Complex b = u.dot(w) / u.squaredNorm();
  return (w - b * u).norm();
}

/// Worst value over the named checks, or a failure if one is missing.
Outcome require_checks(const CheckSet& set, const std::vector<std::string>& names) {
  bool ok = true;
  double worst = 0.0;
  std::string failing;
  for (const auto& n : names) {
    const auto* c = set.find(n);
    if (!c || !c->passed()) {
      ok = false;
      failing += " " + n;
    }
    if (c && !c->lower_bound) worst = std::max(worst, c->worst);
  }
  std::string detail = fmt("%zu identities, worst residual %.2e", names.size(), worst);
  if (!ok) detail += "; failing:" + failing;
  return {ok, detail};
}

// 1: the first matrix display of the monomial example.
Outcome criterion_1() {
  InstanceGenerator gen(kSeed);
  auto p = SpacePair::build(InnerFunction::monomial(5), InnerFunction::monomial(2));
  double worst = 0.0;
  for (int set = 0; set < 5; ++set) {
    const Complex a0 = gen.gaussian(), a1 = gen.gaussian();
    Complex b[5];
    for (auto& x : b) x = gen.gaussian();  // b[k] = b_{-k}
    SymbolPair s{vec({a0, a1}),
                 vec({std::conj(b[0]), std::conj(b[1]), std::conj(b[2]), std::conj(b[3]), std::conj(b[4])})};
    const Matrix d2 = defect_two(p, build_atto(p, s).matrix);
    Matrix display = Matrix::Zero(2, 5);
    display(0, 4) = b[4];
    display(1, 0) = a1;
    display(1, 1) = a0 + b[0];
    display(1, 2) = b[1];
    display(1, 3) = b[2];
    display(1, 4) = b[3];
    worst = std::max(worst, max_abs(d2 - display));
  }
  return {worst <= 1e-10, fmt("5 coefficient sets, max entry error %.2e (bound 1e-10)", worst)};
}

// 2: recovery from the second matrix display.
Outcome criterion_2() {
  InstanceGenerator gen(kSeed);
  auto p = SpacePair::build(InnerFunction::monomial(5), InnerFunction::monomial(2));
  double worst = 0.0;
  for (int set = 0; set < 5; ++set) {
    Complex a[5], b[2];
    for (auto& x : a) x = gen.gaussian();
    for (auto& x : b) x = gen.gaussian();
    Matrix d2 = Matrix::Zero(2, 5);
    d2(0, 4) = b[0];
    for (int k = 0; k < 4; ++k) d2(1, k) = a[k];
    d2(1, 4) = a[4] + b[1];
    const auto r = recover_symbol_from_mu_nu(p, mu_nu_from_defect(p, d2).data);
    SymbolPair expected{vec({a[1], a[0]}), vec({0.0, std::conj(a[2]), std::conj(a[3]),
                                                std::conj(b[1]) + std::conj(a[4]), std::conj(b[0])})};
    worst = std::max(worst, fit_gauge(p, expected, r.symbol).residual);
  }
  return {worst <= 1e-9, fmt("5 coefficient sets, post-gauge error %.2e (bound 1e-9)", worst)};
}

// 3: the mu and nu displays of the Blaschke example, evaluated as printed.
Outcome criterion_3() {
  const double lambda = 0.3;
  InstanceGenerator gen(kSeed);
  auto p = SpacePair::build(InnerFunction::monomial(3) * InnerFunction::blaschke_factor(lambda, 2),
                            InnerFunction::monomial(3));
  const auto m = p.grid_size();
  const Complex l = lambda, lb = std::conj(l);
  auto z = [m](long k) { return GridFunction::monomial(m, k); };
  auto cj = [](Complex x) { return std::conj(x); };
  const auto den = GridFunction::from_function(m, [lb](Complex w) { return 1.0 / ((1.0 - lb * w) * (1.0 - lb * w)); });

  double printed = 0.0, printed_defect = 0.0, corrected = 0.0, membership = 0.0;
  for (int set = 0; set < 5; ++set) {
    Complex a[3], b[5];
    for (auto& x : a) x = gen.gaussian();
    for (auto& x : b) x = gen.gaussian();
    GridFunction num = GridFunction::zeros(m);
    for (int k = 0; k < 5; ++k) num += z(k) * cj(b[k]);
    const auto chi = num * den;
    membership = std::max(membership, p.theta_space.residual(chi));
    const SymbolPair s{vec({a[0], a[1], a[2]}), p.theta_space.project(chi)};
    const auto d = mu_nu_from_symbol(p, s);

    const auto mu_display = z(0) * b[4] + z(1) * (b[3] + 2.0 * lb * b[4]) + z(2) * (b[2] + 3.0 * lb * lb * b[4] + lb * b[3]);
    const auto nu_display = (z(0) * cj(a[2]) + z(1) * (cj(a[1]) - 2.0 * lb * cj(a[2])) +
                             z(2) * (cj(b[0]) + cj(a[0]) - 2.0 * lb * cj(a[1]) + lb * cj(a[2])) +
                             z(3) * (cj(b[1]) + lb * lb * cj(a[1]) - 2.0 * lb * cj(a[0])) + z(4) * (lb * lb * cj(a[0]))) *
                            den;
    const CharData shown{p.alpha_space.project(mu_display), p.theta_space.project(nu_display)};
    printed = std::max(printed, char_gauge_residual(p, d, shown));
    printed_defect = std::max(printed_defect, operator_norm(rank_two_second(p, shown) - rank_two_second(p, d)));

    // Re-derived coefficients, reported alongside.
    auto n_at = [&](Complex w) {
      Complex v = 0.0;
      for (int k = 4; k >= 0; --k) v = v * w + cj(b[k]);
      return v;
    };
    auto dn_at = [&](Complex w) {
      Complex v = 0.0;
      for (int k = 4; k >= 1; --k) v = v * w + static_cast<double>(k) * cj(b[k]);
      return v;
    };
    const Complex c0 = n_at(l) - l * dn_at(l), c1 = dn_at(l);
    const auto mu_fixed = z(0) * b[4] + z(1) * (b[3] + 2.0 * lb * b[4]) + z(2) * (b[2] + 3.0 * lb * lb * b[4] + 2.0 * lb * b[3]);
    const auto nu_fixed = (z(0) * cj(a[2]) + z(1) * (cj(a[1]) - 2.0 * lb * cj(a[2])) +
                           z(2) * (c0 + cj(a[0]) - 2.0 * lb * cj(a[1]) + lb * lb * cj(a[2])) +
                           z(3) * (c1 + lb * lb * cj(a[1]) - 2.0 * lb * cj(a[0])) + z(4) * (lb * lb * cj(a[0]))) *
                          den;
    const CharData fixed{p.alpha_space.project(mu_fixed), p.theta_space.project(nu_fixed)};
    corrected = std::max(corrected, char_gauge_residual(p, d, fixed));
  }
  return {printed <= 1e-8,
          fmt("lambda=0.3, 5 sets: printed mu/nu off by %.2e after gauge fit (bound 1e-8), D2 mismatch %.2e; "
              "re-derived mu/nu match to %.2e; chi in K_theta to %.1e",
              printed, printed_defect, corrected, membership)};
}

// 4: both characterizations and the rank bounds.
Outcome criterion_4() {
  InstanceGenerator gen(kSeed);
  CheckSet set;
  verify_characterize(gen, 50, set);
  return require_checks(set, {"char.defect_one_form", "char.defect_two_form", "char.defect_one_rank",
                              "char.defect_two_rank", "char.membership_roundtrip"});
}

// 5: zero and nonzero symbols.
Outcome criterion_5() {
  InstanceGenerator gen(kSeed);
  double zero_worst = 0.0, nonzero_least = INFINITY;
  bool trivial_drawn = false;
  for (int k = 0; k < 20; ++k) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha, 8);
    const auto m = p.grid_size();
    auto poly = [&](std::size_t deg) {
      std::map<long, Complex> terms;
      const auto c = gen.polynomial(deg);
      for (std::size_t j = 0; j < c.size(); ++j) terms[static_cast<long>(j)] = c[j];
      return GridFunction::from_laurent(m, terms);
    };
    const auto h1 = poly(gen.integer(0, 4));
    const auto h2 = poly(gen.integer(0, 4));
    const auto phi = p.alpha_samples() * h1 + (p.theta_space.theta_samples() * h2).conj();
    zero_worst = std::max(zero_worst, operator_norm(build_atto(p, phi).matrix));
  }
  for (int k = 0; k < 20; ++k) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha);
    const auto s = random_symbol(gen, p);
    if (is_gauge_trivial(p, s)) trivial_drawn = true;
    nonzero_least = std::min(nonzero_least, operator_norm(build_atto(p, s).matrix));
  }
  const bool ok = zero_worst <= 1e-9 && nonzero_least >= 1e-6 && !trivial_drawn;
  return {ok, fmt("20 zero symbols: max ||A|| %.2e (bound 1e-9); 20 nontrivial: min ||A|| %.2e (bound 1e-6)",
                  zero_worst, nonzero_least)};
}

// 6: kernel actions, the six projection identities as printed, and the shift counterexample.
Outcome criterion_6() {
  InstanceGenerator gen(kSeed);
  double kernel_worst = 0.0, printed_first = 0.0, corrected_first = 0.0, others = 0.0;
  int printed_misses = 0;
  for (int k = 0; k < 20; ++k) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha);
    const auto s = random_symbol(gen, p);
    for (const auto& c : kernel_action_suite(p, s)) kernel_worst = std::max(kernel_worst, c.residual);

    const auto suite = projection_identity_suite(p, s);
    corrected_first = std::max(corrected_first, suite[0].residual);
    for (std::size_t j = 1; j <= 6; ++j) others = std::max(others, suite[j].residual);

    // Item 1 exactly as printed: -conj(q(0)) chi_q(0) ||k0~^theta||^-2 k0~^theta.
    const auto split = decompose_quotient_first(p, s.chi);
    const auto& kt = p.theta_space.kernels().k0_tilde;
    Complex lhs = 0.0, chi_q0 = 0.0;
    if (p.quotient_space) {
      const Vector backward = p.theta_space.compressed_shift().adjoint * (p.alpha_times_quotient * split.quotient_part);
      lhs = inner(backward, kt) / kt.squaredNorm();
      chi_q0 = p.quotient_space->evaluate(split.quotient_part, 0.0);
    }
    const Complex shown = -std::conj(p.quotient0) * chi_q0 / kt.squaredNorm();
    const double miss = std::abs(lhs - shown) * kt.norm();
    if (miss > 1e-9) ++printed_misses;
    printed_first = std::max(printed_first, miss);
  }
  CheckSet set;
  InstanceGenerator none(kSeed);
  verify_atto(none, 0, set);
  const double counterexample = set.find("atto.shift_counterexample")->worst;

  const bool ok = kernel_worst <= 1e-9 && printed_first <= 1e-9 && others <= 1e-9 && counterexample <= 1e-12;
  return {ok, fmt("20 instances: 8 kernel actions %.2e; projection items 2-6 %.2e; item 1 as printed %.2e "
                  "(misses on %d/20), with the |alpha(0)|^2 factor restored %.2e; shift counterexample %.1e",
                  kernel_worst, others, printed_first, printed_misses, corrected_first, counterexample)};
}

// 7: both recovery paths, the sign of the scalar system and its determinant.
Outcome criterion_7() {
  InstanceGenerator gen(kSeed);
  double path1 = 0.0, path2 = 0.0, cross = 0.0, plus = 0.0, minus_least = INFINITY, det_gap = 0.0;
  int informative = 0;
  for (int k = 0; k < 50; ++k) {
    auto [theta, alpha] = gen.pair();
    auto p = SpacePair::build(theta, alpha);
    const auto s = random_symbol(gen, p);
    const Matrix a = build_atto(p, s).matrix;

    // Oracle for the second scalar equation: <A k0~^theta, k0~^alpha> = q(0) psi(0) + conj(chi_alpha(0)).
    const auto split = decompose_quotient_first(p, s.chi);
    const Complex psi0 = p.alpha_space.evaluate(s.psi, 0.0);
    const Complex b = std::conj(p.alpha_space.evaluate(split.alpha_part, 0.0));
    const Complex pairing =
        inner(Vector(a * p.theta_space.kernels().k0_tilde), p.alpha_space.kernels().k0_tilde);
    plus = std::max(plus, std::abs(pairing - (p.quotient0 * psi0 + b)));
    if (std::abs(p.quotient0 * psi0) > 1e-3) {
      ++informative;
      minus_least = std::min(minus_least, std::abs(pairing - (-p.quotient0 * psi0 + b)));
    }

    const auto scalars = recover_scalars(p, a);
    det_gap = std::max(det_gap, (1.0 - std::norm(p.theta0) - 1e-9) - std::abs(scalars.determinant));

    const auto r1 = recover_symbol_from_actions(p, a);
    const auto r2 = recover_symbol_from_mu_nu(p, extract_mu_nu(p, a).data);
    path1 = std::max(path1, operator_norm(build_atto(p, r1.symbol).matrix - a));
    path2 = std::max(path2, operator_norm(build_atto(p, r2.symbol).matrix - a));
    cross = std::max(cross, fit_gauge(p, r1.symbol, r2.symbol).residual);
  }
  const bool sign_fixed = plus <= 1e-9 && informative > 0 && minus_least > 1e-6;
  const bool ok = path1 <= 1e-8 && path2 <= 1e-8 && cross <= 1e-8 && sign_fixed && det_gap <= 0.0;
  return {ok, fmt("50 instances: actions path %.2e, mu/nu path %.2e, cross-path gauge %.2e; "
                  "oracle picks +q(0)a (residual %.2e, the - sign misses by >= %.2e on %d instances); "
                  "determinant >= 1-|theta(0)|^2-1e-9 on all",
                  path1, path2, cross, plus, minus_least, informative)};
}

// 8: structural identities.
Outcome criterion_8() {
  InstanceGenerator gen(kSeed);
  CheckSet set;
  verify_model_space(gen, 20, set);
  verify_atto(gen, 20, set);
  return require_checks(
      set, {"model.conjugation_involution", "model.conjugation_isometry", "model.conjugation_kernel",
            "model.defect_shift_adjoint", "model.defect_adjoint_shift", "model.shift_kernels", "model.orthogonal_sum",
            "model.projection_split", "model.k0_split", "model.k0_tilde_split", "model.projected_k0_tilde",
            "model.intertwining_projection", "model.intertwining_adjoint", "atto.analytic_intertwining"});
}

struct Criterion {
  const char* title;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"monomial example, first display", 1.0, criterion_1},
      {"monomial example, second display", 0.0, criterion_2},
      {"Blaschke example, mu and nu displays", 2.0, criterion_3},
      {"characterization suite", 30.0, criterion_4},
      {"zero-symbol suite", 0.0, criterion_5},
      {"kernel-action suite", 0.0, criterion_6},
      {"recovery round trips", 0.0, criterion_7},
      {"structural suite", 0.0, criterion_8},
  };

  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(n - 1);
    last = first + 1;
  }

  bool all = true;
  for (std::size_t i = first; i < last; ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      out.passed = false;
      out.detail += fmt("; over the %.0f s budget", c.budget_seconds);
    }
    std::printf("%s criterion %zu (%s): %s [%.2f s]\n", out.passed ? "PASS" : "FAIL", i + 1, c.title,
                out.detail.c_str(), seconds);
    all = all && out.passed;
  }
  return all ? 0 : 1;
}
